#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "alphamix/error.hpp"
#include "alphamix/template_io.hpp"
#include "generators.hpp"
#include "temp_dir.hpp"

using namespace alphamix;
using testing_support::TempDir;

namespace {

// Writes `ids` x `per` random AIRC templates plus a manifest; returns its path.
std::filesystem::path write_fixture(const TempDir& dir, std::size_t ids, std::size_t per,
                                    std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < ids; ++i) {
    for (std::size_t s = 0; s < per; ++s) {
      const std::string sample = "S" + std::to_string(i) + "_" + std::to_string(s);
      save_template(gen::random_template(rng, 20, 512), dir / (sample + ".airc"));
      entries.push_back({"S" + std::to_string(i), sample, sample + ".airc", std::nullopt});
    }
  }
  write_manifest(dir / "manifest.tsv", entries);
  return dir / "manifest.tsv";
}

}  // namespace

TEST(PopulationIo, LoadsInManifestOrder) {
  TempDir dir;
  const LoadResult r = load_population(write_fixture(dir, 3, 2));
  EXPECT_EQ(r.population.size(), 6u);
  EXPECT_EQ(r.population.identity_count(), 3u);
  EXPECT_TRUE(r.rejections.empty());
  EXPECT_EQ(r.population[0].sample_id(), "S0_0");
  EXPECT_EQ(r.population[5].sample_id(), "S2_1");
  EXPECT_EQ(r.population.samples_of("S1").size(), 2u);
}

TEST(PopulationIo, BadMagicNamesTheFile) {
  TempDir dir;
  const auto manifest = write_fixture(dir, 2, 1);
  dir.write("S1_0.airc", "JUNKxxxxxxxxxxxx");
  try {
    load_population(manifest);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("S1_0.airc"), std::string::npos) << e.what();
  }
}

TEST(PopulationIo, MissingFileIsIoError) {
  TempDir dir;
  dir.write("m.tsv", "A\ta\tnope.airc\n");
  EXPECT_THROW(load_population(dir / "m.tsv"), IoError);
}

TEST(PopulationIo, DuplicateSampleAndShapeMismatch) {
  TempDir dir;
  std::mt19937_64 rng(2);
  save_template(gen::random_template(rng, 20, 512), dir / "a.airc");
  save_template(gen::random_template(rng, 10, 512), dir / "b.airc");
  dir.write("dup.tsv", "A\tx\ta.airc\nB\tx\ta.airc\n");
  EXPECT_THROW(load_population(dir / "dup.tsv"), InvalidArgument);
  dir.write("shape.tsv", "A\tx\ta.airc\nB\ty\tb.airc\n");
  EXPECT_THROW(load_population(dir / "shape.tsv"), DimensionError);
}

TEST(PopulationIo, AdmissibilityRejectsAllZeroCode) {
  TempDir dir;
  const auto manifest = write_fixture(dir, 3, 2);
  save_template(IrisTemplate::with_full_mask(BitGrid(20, 512)), dir / "S2_1.airc");
  AdmissibilityPolicy policy;
  policy.min_code_density = 0.05;
  const LoadResult r = load_population(manifest, policy);
  EXPECT_EQ(r.population.size(), 5u);
  ASSERT_EQ(r.rejections.size(), 1u);
  EXPECT_EQ(r.rejections[0].sample_id, "S2_1");
  EXPECT_NE(r.rejections[0].reason.find("code density"), std::string::npos);
}

TEST(PopulationIo, AdmissibilityMaskFraction) {
  AdmissibilityPolicy policy;
  const IrisTemplate occluded(gen::grid({"1010"}), gen::grid({"0000"}));
  EXPECT_TRUE(policy.check(occluded).has_value());
  AdmissibilityPolicy bad;
  bad.min_code_density = 0.9;
  bad.max_code_density = 0.1;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(PopulationIo, AircRoundTripIsBitExact) {
  TempDir dir;
  std::mt19937_64 rng(3);
  for (auto [rows, cols] : {std::pair{20, 512}, std::pair{3, 13}, std::pair{1, 1}}) {
    const IrisTemplate t = gen::random_template(rng, rows, cols);
    save_template(t, dir / "t.airc");
    const IrisTemplate back = read_template(dir / "t.airc");
    EXPECT_TRUE(back.same_bits(t));
    EXPECT_TRUE(back.code().padding_is_clear());
    EXPECT_EQ(back.sample_id(), "t");
  }
}

TEST(PopulationIo, AircHeaderLayout) {
  const IrisTemplate t(gen::grid({"1000000001"}), gen::grid({"1111111111"}));
  const auto bytes = encode_airc(t);
  const std::vector<std::uint8_t> want{'A', 'I', 'R', 'C', 1, 0, 1, 0, 10,
                                       0x80, 0x40, 0xFF, 0xC0};
  EXPECT_EQ(bytes, want);
}

TEST(PopulationIo, AircHeaderErrors) {
  std::vector<std::uint8_t> zero_rows{'A', 'I', 'R', 'C', 1, 0, 0, 0, 8};
  EXPECT_THROW(decode_airc(zero_rows, "z"), FormatError);
  std::vector<std::uint8_t> version{'A', 'I', 'R', 'C', 9, 0, 1, 0, 8, 0, 0};
  try {
    decode_airc(version, "v");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
  std::vector<std::uint8_t> truncated{'A', 'I', 'R', 'C', 1, 0, 1, 0, 8, 0};
  EXPECT_THROW(decode_airc(truncated, "t"), FormatError);
}

TEST(PopulationIo, TextMatrixImport) {
  const BitGrid g = parse_text_matrix("10\n01", "inline");
  EXPECT_EQ(g.rows(), 2u);
  EXPECT_EQ(g.cols(), 2u);
  EXPECT_TRUE(g.get(0, 0));
  EXPECT_FALSE(g.get(0, 1));
  EXPECT_FALSE(g.get(1, 0));
  EXPECT_TRUE(g.get(1, 1));
  EXPECT_EQ(format_text_matrix(g), "10\n01\n");
  EXPECT_THROW(parse_text_matrix("10\n0x", "bad"), FormatError);
  EXPECT_THROW(parse_text_matrix("10\n011", "ragged"), FormatError);
  EXPECT_THROW(parse_text_matrix("\n\n", "empty"), FormatError);
}

TEST(Split, SameSetReturnsWholePopulation) {
  std::mt19937_64 rng(4);
  const Population p = gen::random_population(rng, 5, 2, 2, 16);
  const auto s = split(p, {SplitMode::SameSet, 1.0, 0});
  EXPECT_EQ(s.train.size(), p.size());
  EXPECT_EQ(s.test.size(), p.size());
}

TEST(Split, DisjointCountsFollowFraction) {
  std::vector<IrisTemplate> samples;
  for (int i = 0; i < 1000; ++i) {
    samples.push_back(gen::full({"1"}, "s" + std::to_string(i), "id" + std::to_string(i)));
  }
  const Population p(std::move(samples));
  const auto s = split(p, {SplitMode::DisjointIdentities, 0.093, 42});
  EXPECT_EQ(s.train.identity_count(), 93u);
  EXPECT_EQ(s.test.identity_count(), 907u);

  std::set<std::string> train(s.train.identities().begin(), s.train.identities().end());
  std::set<std::string> test(s.test.identities().begin(), s.test.identities().end());
  std::vector<std::string> both;
  std::set_intersection(train.begin(), train.end(), test.begin(), test.end(),
                        std::back_inserter(both));
  EXPECT_TRUE(both.empty());
  EXPECT_EQ(train.size() + test.size(), 1000u);
}

TEST(Split, SeedDeterminism) {
  std::mt19937_64 rng(5);
  const Population p = gen::random_population(rng, 40, 1, 1, 8);
  const SplitSpec spec{SplitMode::DisjointIdentities, 0.5, 9};
  EXPECT_EQ(split(p, spec).train.identities(), split(p, spec).train.identities());
  EXPECT_NE(split(p, spec).train.identities(),
            split(p, {SplitMode::DisjointIdentities, 0.5, 10}).train.identities());
}

TEST(Split, Errors) {
  std::mt19937_64 rng(6);
  const Population p = gen::random_population(rng, 4, 1, 1, 8);
  EXPECT_THROW(split(Population{}, {}), InvalidArgument);
  EXPECT_THROW(split(p, {SplitMode::DisjointIdentities, 1.0, 0}), InvalidArgument);
  EXPECT_THROW(split(p, {SplitMode::DisjointIdentities, 0.1, 0}), InvalidArgument);
  EXPECT_THROW(split(p, {SplitMode::DisjointIdentities, 0.0, 0}), InvalidArgument);
}
