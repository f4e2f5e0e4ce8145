#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "alphamix/cli/cli.hpp"
#include "alphamix/template_io.hpp"
#include "json.hpp"
#include "temp_dir.hpp"

using alphamix::cli::run;
using testing_support::read_file;
using testing_support::TempDir;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> records(const fs::path& report, const std::string& kind) {
  std::vector<nlohmann::json> out;
  std::istringstream in(read_file(report));
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    if (j["record"] == kind) out.push_back(j);
  }
  return out;
}

std::size_t line_count(const fs::path& p) {
  std::istringstream in(read_file(p));
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

// Six text templates of 4x16 over three identities.
fs::path text_fixture(TempDir& dir, bool zero_code = false, bool bad_char = false) {
  std::string manifest;
  for (int i = 0; i < 6; ++i) {
    std::string body;
    for (int r = 0; r < 4; ++r) {
      std::string row;
      for (int c = 0; c < 16; ++c) row += ((r * 7 + c * 3 + i) % 5 < 2) ? '1' : '0';
      if (zero_code && i == 4) row = std::string(16, '0');
      if (bad_char && i == 2 && r == 1) row[5] = '2';
      body += row + "\n";
    }
    const std::string name = "t" + std::to_string(i) + ".txt";
    dir.write(name, body);
    manifest += "P" + std::to_string(i / 2) + " S" + std::to_string(i) + " " + name + "\n";
  }
  dir.write("text_manifest.txt", manifest);
  return dir.path() / "text_manifest.txt";
}

fs::path synth_fixture(TempDir& dir, std::size_t identities = 10, const std::string& seed = "3") {
  const fs::path out = dir.path() / ("pop" + std::to_string(identities) + "_" + seed);
  EXPECT_EQ(call({"synth", "--out", out.string(), "--identities", std::to_string(identities),
                  "--seed", seed})
                .code,
            0);
  return out / "manifest.tsv";
}

}  // namespace

TEST(CliImport, ValidFixture) {
  TempDir dir;
  const auto manifest = text_fixture(dir);
  const fs::path out = dir.path() / "imported";
  const Result r = call({"import", "--manifest", manifest.string(), "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t airc = 0;
  for (const auto& e : fs::directory_iterator(out / "templates")) airc += e.path().extension() == ".airc";
  EXPECT_EQ(airc, 6u);
  const auto loaded = alphamix::load_population(out / "manifest.tsv");
  EXPECT_EQ(loaded.population.size(), 6u);
  EXPECT_EQ(loaded.population.identity_count(), 3u);
  EXPECT_EQ(line_count(out / "rejections.tsv"), 1u);
}

TEST(CliImport, BadCharacterIsInputError) {
  TempDir dir;
  const auto manifest = text_fixture(dir, false, true);
  const Result r = call({"import", "--manifest", manifest.string(), "--out", (dir.path() / "o").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("t2.txt"), std::string::npos) << r.err;
}

TEST(CliImport, AllZeroCodeRejected) {
  TempDir dir;
  const auto manifest = text_fixture(dir, true);
  const fs::path out = dir.path() / "o";
  ASSERT_EQ(call({"import", "--manifest", manifest.string(), "--out", out.string()}).code, 0);
  EXPECT_EQ(records(out / "report.jsonl", "rejection").size(), 1u);
  EXPECT_EQ(line_count(out / "rejections.tsv"), 2u);
  EXPECT_EQ(records(out / "report.jsonl", "template").size(), 5u);
}

TEST(CliCalibrate, FourThresholdsNonDecreasingAndDeterministic) {
  TempDir dir;
  const auto pop = synth_fixture(dir);
  const fs::path a = dir.path() / "cal_a", b = dir.path() / "cal_b";
  const std::vector<std::string> args{"calibrate", "--population", pop.string(), "--fmr",
                                      "0.00001,0.0001,0.001,0.01"};
  auto with_out = [&](const fs::path& o) {
    auto v = args;
    v.insert(v.end(), {"--out", o.string()});
    return v;
  };
  ASSERT_EQ(call(with_out(a)).code, 0);
  ASSERT_EQ(call(with_out(b)).code, 0);
  const auto th = records(a / "report.jsonl", "threshold");
  ASSERT_EQ(th.size(), 4u);
  for (std::size_t i = 1; i < th.size(); ++i) EXPECT_GE(th[i]["tau"].get<double>(), th[i - 1]["tau"].get<double>());
  // 720 imposter scores: budgets below one pair cannot match anything.
  EXPECT_TRUE(th[0]["no_match"].get<bool>());
  EXPECT_FALSE(th[3]["no_match"].get<bool>());
  EXPECT_EQ(read_file(a / "report.jsonl"), read_file(b / "report.jsonl"));
  EXPECT_EQ(read_file(a / "summary.txt"), read_file(b / "summary.txt"));
  EXPECT_EQ(line_count(a / "scores.txt"), 720u);
}

TEST(CliCalibrate, ReportHeader) {
  TempDir dir;
  const auto pop = synth_fixture(dir);
  const fs::path o = dir.path() / "cal";
  ASSERT_EQ(call({"calibrate", "--population", pop.string(), "--out", o.string()}).code, 0);
  const auto run_rec = records(o / "report.jsonl", "run");
  ASSERT_EQ(run_rec.size(), 1u);
  EXPECT_EQ(run_rec[0]["version"], "0.3.0");
  EXPECT_TRUE(run_rec[0].contains("seed"));
  EXPECT_EQ(run_rec[0]["config_digest"].get<std::string>().rfind("sha256:", 0), 0u);
  EXPECT_NE(run_rec[0]["compressor"].get<std::string>().find("deflate-9"), std::string::npos);
  const std::string report = read_file(o / "report.jsonl") + read_file(o / "summary.txt");
  EXPECT_EQ(report.find(dir.path().string()), std::string::npos);
}

TEST(CliWolves, NoneFoundIsDegenerate) {
  TempDir dir;
  const auto pop = synth_fixture(dir);
  const fs::path o = dir.path() / "w";
  EXPECT_EQ(call({"wolves", "--population", pop.string(), "--out", o.string(), "--min-matches", "1000"}).code, 1);
  EXPECT_TRUE(fs::exists(o / "report.jsonl"));
  const Result ok = call({"wolves", "--population", pop.string(), "--out", (dir.path() / "w2").string(), "--fmr", "0.1"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_FALSE(records(dir.path() / "w2" / "report.jsonl", "wolf").empty());
}

TEST(CliAttack, AlphaWolfEnumeratesAllMixtures) {
  TempDir dir;
  const auto pop = synth_fixture(dir);
  const fs::path o = dir.path() / "aw";
  const Result r = call({"attack", "--population", pop.string(), "--out", o.string(), "--fmr",
                         "0.01,0.1", "--select-fmr", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(o / "mixtures.tsv"), 151u);  // header + 150
  EXPECT_EQ(records(o / "report.jsonl", "mixture").size(), 150u);
  EXPECT_EQ(records(o / "report.jsonl", "wolf").size(), 6u);
  // 3 k rows x 2 FMRs x 3 operators.
  EXPECT_EQ(records(o / "report.jsonl", "cell").size(), 18u);
  const std::string summary = read_file(o / "summary.txt");
  EXPECT_NE(summary.find("OR/AND/XOR"), std::string::npos);
  EXPECT_NE(summary.find("@1%"), std::string::npos);
  EXPECT_EQ(alphamix::load_population(o / "mixtures" / "manifest.tsv").population.size(), 150u);
}

TEST(CliAttack, TooFewWolvesIsDegenerate) {
  TempDir dir;
  const auto pop = synth_fixture(dir);
  EXPECT_EQ(call({"attack", "--population", pop.string(), "--out", (dir.path() / "x").string(),
                  "--min-matches", "1000"})
                .code,
            1);
}

TEST(CliAttack, AlphaMammalOneMixturePerOperator) {
  TempDir dir;
  const auto pop = synth_fixture(dir);
  const fs::path o = dir.path() / "am";
  ASSERT_EQ(call({"attack", "--mode", "alphamammal", "--population", pop.string(), "--out",
                  o.string(), "--fmr", "0.1"})
                .code,
            0);
  EXPECT_EQ(records(o / "report.jsonl", "mixture").size(), 3u);
  EXPECT_FALSE(records(o / "report.jsonl", "search_step").empty());
  const fs::path o2 = dir.path() / "am2";
  ASSERT_EQ(call({"attack", "--mode", "alphamammal", "--population", pop.string(), "--out",
                  o2.string(), "--ops", "xor"})
                .code,
            0);
  EXPECT_EQ(records(o2 / "report.jsonl", "mixture").size(), 1u);
}

TEST(CliAttack, CrossEmitsBothThresholds) {
  TempDir dir;
  const auto attack_side = synth_fixture(dir, 10, "3");
  const auto target = synth_fixture(dir, 12, "9");
  const fs::path o = dir.path() / "cr";
  const Result r = call({"attack", "--mode", "cross", "--population", attack_side.string(),
                         "--target", target.string(), "--out", o.string(), "--fmr", "0.01,0.1",
                         "--select-fmr", "0.3", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto mixtures = records(o / "report.jsonl", "mixture");
  ASSERT_EQ(mixtures.size(), 45u);
  EXPECT_EQ(mixtures[0]["coverage"].size(), 4u);  // 2 FMRs x 2 thresholds
  const auto th = records(o / "report.jsonl", "threshold");
  EXPECT_EQ(th.size(), 4u);
  const std::string summary = read_file(o / "summary.txt");
  EXPECT_NE(summary.find("tau-attack"), std::string::npos);
  EXPECT_NE(summary.find("tau-target"), std::string::npos);

  EXPECT_EQ(call({"attack", "--mode", "cross", "--population", attack_side.string(), "--out",
                  (dir.path() / "c2").string()})
                .code,
            2);
}

TEST(CliSynth, HmmCodesAndDeterminism) {
  TempDir dir;
  const fs::path a = dir.path() / "a", b = dir.path() / "b";
  ASSERT_EQ(call({"synth", "--mode", "hmm", "--count", "10", "--seed", "5", "--out", a.string()}).code, 0);
  ASSERT_EQ(call({"synth", "--mode", "hmm", "--count", "10", "--seed", "5", "--out", b.string()}).code, 0);
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(a / "templates")) {
    ++n;
    EXPECT_EQ(read_file(e.path()), read_file(b / "templates" / e.path().filename()));
  }
  EXPECT_EQ(n, 10u);
  EXPECT_EQ(read_file(a / "report.jsonl"), read_file(b / "report.jsonl"));
}

TEST(CliSynth, SpecViolationIsInputError) {
  TempDir dir;
  EXPECT_EQ(call({"synth", "--identities", "5", "--wolves", "3", "--out", (dir.path() / "x").string()}).code, 2);
  EXPECT_EQ(call({"synth", "--flip-rate", "0.7", "--out", (dir.path() / "y").string()}).code, 2);
  EXPECT_EQ(call({"synth", "--mode", "hmm", "--alpha", "2", "--out", (dir.path() / "z").string()}).code, 2);
}

TEST(CliAnalyze, WritesMapsAndNcd) {
  TempDir dir;
  const fs::path hmm = dir.path() / "hmm";
  ASSERT_EQ(call({"synth", "--mode", "hmm", "--count", "4", "--rows", "3", "--cols", "40", "--out", hmm.string()}).code, 0);
  const fs::path o = dir.path() / "an";
  ASSERT_EQ(call({"analyze", "--population", (hmm / "manifest.tsv").string(), "--out", o.string()}).code, 0);
  EXPECT_EQ(line_count(o / "frequency.txt"), 3u);
  EXPECT_EQ(read_file(o / "frequency.pgm").rfind("P2\n40 3\n255\n", 0), 0u);
  EXPECT_EQ(line_count(o / "ncd.tsv"), 1u + 6u);
  const auto stats = records(o / "report.jsonl", "bit_stats");
  ASSERT_EQ(stats.size(), 1u);
  EXPECT_EQ(stats[0]["mask_mean"].get<double>(), 1.0);

  const fs::path o2 = dir.path() / "an2";
  ASSERT_EQ(call({"analyze", "--population", (hmm / "manifest.tsv").string(), "--reference",
                  (hmm / "manifest.tsv").string(), "--out", o2.string()})
                .code,
            0);
  EXPECT_EQ(line_count(o2 / "ncd.tsv"), 1u + 16u);
}

TEST(CliConfig, FileValuesAndFlagPrecedence) {
  TempDir dir;
  const auto pop = synth_fixture(dir);
  dir.write("exp.cfg", "# experiment\n[calibrate]\nfmr = 0.01,0.1\nshift-range = 2\n");
  const fs::path a = dir.path() / "a", b = dir.path() / "b";
  ASSERT_EQ(call({"calibrate", "--config", (dir.path() / "exp.cfg").string(), "--population",
                  pop.string(), "--out", a.string()})
                .code,
            0);
  auto run_rec = records(a / "report.jsonl", "run")[0];
  EXPECT_EQ(run_rec["params"]["shift_range"], 2);
  EXPECT_EQ(records(a / "report.jsonl", "threshold").size(), 2u);

  ASSERT_EQ(call({"calibrate", "--config", (dir.path() / "exp.cfg").string(), "--population",
                  pop.string(), "--out", b.string(), "--shift-range", "4"})
                .code,
            0);
  run_rec = records(b / "report.jsonl", "run")[0];
  EXPECT_EQ(run_rec["params"]["shift_range"], 4);
  EXPECT_EQ(records(b / "report.jsonl", "threshold").size(), 2u);

  dir.write("bad.cfg", "[calibrate]\nno-such-key = 1\n");
  EXPECT_EQ(call({"calibrate", "--config", (dir.path() / "bad.cfg").string(), "--population",
                  pop.string(), "--out", (dir.path() / "c").string()})
                .code,
            2);
}

TEST(CliRun, LockFileBlocksConcurrentUse) {
  TempDir dir;
  const auto pop = synth_fixture(dir);
  const fs::path o = dir.path() / "locked";
  fs::create_directories(o);
  std::ofstream(o / ".alphamix.lock") << "";
  const Result r = call({"calibrate", "--population", pop.string(), "--out", o.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("locked"), std::string::npos);
  fs::remove(o / ".alphamix.lock");
  EXPECT_EQ(call({"calibrate", "--population", pop.string(), "--out", o.string()}).code, 0);
  EXPECT_FALSE(fs::exists(o / ".alphamix.lock"));
}

TEST(CliRun, UsageErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
  EXPECT_EQ(call({"calibrate", "--population", "/nonexistent/manifest.tsv", "--out", "x"}).code, 2);
}

TEST(CliBinary, ExitStatusReachesShell) {
  TempDir dir;
  const std::string bin = ALPHAMIX_BINARY;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status(bin + " --version"), 0);
  EXPECT_EQ(status(bin + " synth --mode hmm --count 2 --out " + (dir.path() / "h").string()), 0);
  EXPECT_EQ(status(bin + " synth --flip-rate 0.9 --out " + (dir.path() / "x").string()), 2);
  const auto pop = synth_fixture(dir);
  EXPECT_EQ(status(bin + " wolves --min-matches 999 --population " + pop.string() + " --out " +
                   (dir.path() / "w").string()),
            1);
}
