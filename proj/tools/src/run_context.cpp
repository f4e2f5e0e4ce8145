#include "run_context.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "alphamix/analysis.hpp"
#include "alphamix/error.hpp"
#include "alphamix/template_io.hpp"
#include "alphamix/version.hpp"

namespace alphamix::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string population_digest(const Population& p) {
  std::string blob;
  for (const IrisTemplate& t : p) {
    blob += t.identity_id();
    blob.push_back('\0');
    blob += t.sample_id();
    blob.push_back('\0');
    const auto bytes = encode_airc(t);
    blob.append(bytes.begin(), bytes.end());
  }
  return "sha256:" + sha256_hex(blob);
}

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
  lock_ = dir_ / ".alphamix.lock";
  std::FILE* f = std::fopen(lock_.c_str(), "wx");
  if (!f) {
    lock_.clear();
    throw IoError("output directory '" + dir_.string() +
                  "' is locked by another run (remove .alphamix.lock if stale)");
  }
  std::fclose(f);
}

OutputDir::~OutputDir() {
  if (!lock_.empty()) {
    std::error_code ec;
    std::filesystem::remove(lock_, ec);
  }
}

void OutputDir::write_text(const std::string& name, const std::string& content) const {
  const auto path = dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

json Report::header() const {
  json h;
  h["record"] = "run";
  h["tool"] = "alphamix";
  h["version"] = std::string(version());
  h["command"] = command_;
  if (!mode_.empty()) h["mode"] = mode_;
  h["seed"] = seed_;
  h["config_digest"] = config_digest();
  h["inputs"] = inputs_;
  h["compressor"] = compressor_identity();
  h["params"] = params_;
  return h;
}

std::string Report::config_digest() const {
  json c;
  c["command"] = command_;
  c["mode"] = mode_;
  c["params"] = params_;
  c["inputs"] = inputs_;
  return "sha256:" + sha256_hex(c.dump());
}

void Report::write(const OutputDir& out) const {
  std::string jsonl = header().dump() + "\n";
  for (const json& r : records_) jsonl += r.dump() + "\n";
  out.write_text("report.jsonl", jsonl);

  std::ostringstream s;
  s << "alphamix " << version() << "  " << command_;
  if (!mode_.empty()) s << " (" << mode_ << ")";
  s << "\nconfig digest   " << config_digest() << "\n";
  for (const auto& [role, digest] : inputs_) s << "input " << role << "  " << digest << "\n";
  s << "seed            " << seed_ << "\n";
  s << "compressor      " << compressor_identity() << "\n\n";
  s << summary_.str();
  out.write_text("summary.txt", s.str());
}

Population load_for_report(const std::filesystem::path& manifest, bool admissibility,
                           const std::string& role, Report& report) {
  std::optional<AdmissibilityPolicy> policy;
  if (admissibility) policy = AdmissibilityPolicy{};
  LoadResult loaded = load_population(manifest, policy);
  for (const Rejection& r : loaded.rejections) {
    report.add({{"record", "rejection"}, {"input", role}, {"identity", r.identity_id},
                {"sample", r.sample_id}, {"reason", r.reason}});
  }
  if (loaded.population.empty()) {
    throw InvalidArgument("'" + manifest.string() + "' yields no admissible templates");
  }
  report.add_input(role, population_digest(loaded.population));
  return std::move(loaded.population);
}

void write_population(const OutputDir& out, std::span<const IrisTemplate> templates,
                      const std::vector<std::string>& file_stems) {
  std::filesystem::create_directories(out / "templates");
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const std::string rel = "templates/" + file_stems[i] + ".airc";
    save_template(templates[i], out / rel);
    entries.push_back({templates[i].identity_id(), templates[i].sample_id(), rel, std::nullopt});
  }
  write_manifest(out / "manifest.tsv", entries);
}

std::string fmr_label(double fmr) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", fmr * 100.0);
  return buf;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void CoverageTable::set(const std::string& row, std::size_t fmr_index, MixOp op, double percent) {
  if (std::find(rows_.begin(), rows_.end(), row) == rows_.end()) rows_.push_back(row);
  cells_[{row, fmr_index}][op] = percent;
}

std::string CoverageTable::render(const std::string& row_header) const {
  std::vector<std::vector<std::string>> grid;
  std::string ops;
  for (MixOp op : ops_) ops += (ops.empty() ? "" : "/") + std::string(to_string(op));
  std::vector<std::string> head{row_header};
  for (double f : fmrs_) head.push_back("@" + fmr_label(f));
  grid.push_back(head);
  for (const std::string& row : rows_) {
    std::vector<std::string> line{row};
    for (std::size_t c = 0; c < fmrs_.size(); ++c) {
      std::string cell;
      const auto it = cells_.find({row, c});
      for (MixOp op : ops_) {
        if (!cell.empty()) cell += "/";
        if (it != cells_.end() && it->second.count(op)) {
          cell += fixed(it->second.at(op), 2);
        } else {
          cell += "-";
        }
      }
      line.push_back(cell);
    }
    grid.push_back(line);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : grid)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());

  std::string out = "Users covered (%) @ FMR, cells " + ops + "\n";
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      std::string cell = grid[r][c];
      cell.resize(width[c], ' ');
      out += (c ? "  " : "") + cell;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

}  // namespace alphamix::cli
