#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphamix/iris_template.hpp"
#include "alphamix/population.hpp"
#include "json.hpp"

namespace alphamix::cli {

using json = nlohmann::json;

/// Thrown when a command ran to completion but has nothing to report.
class Degenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::string_view bytes);

/// Digest of the template content (ids and AIRC bytes, in population
/// order); independent of where the files live.
std::string population_digest(const Population& p);

/// Output directory held for the lifetime of a command. Creating it takes
/// a lock file; a second holder gets IoError.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  ~OutputDir();
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  const std::filesystem::path& path() const noexcept { return dir_; }
  std::filesystem::path operator/(const std::string& name) const { return dir_ / name; }
  void write_text(const std::string& name, const std::string& content) const;

 private:
  std::filesystem::path dir_;
  std::filesystem::path lock_;
};

/// report.jsonl (one record per line, run header first) plus summary.txt.
class Report {
 public:
  Report(std::string command, std::string mode = {}) : command_(std::move(command)), mode_(std::move(mode)) {}

  /// Effective parameters without paths; they feed the config digest.
  void set_params(json params) { params_ = std::move(params); }
  void add_input(const std::string& role, const std::string& digest) { inputs_[role] = digest; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void add(json record) { records_.push_back(std::move(record)); }
  std::ostream& summary() { return summary_; }

  std::string config_digest() const;
  void write(const OutputDir& out) const;

 private:
  json header() const;

  std::string command_;
  std::string mode_;
  json params_ = json::object();
  std::map<std::string, std::string> inputs_;
  std::uint64_t seed_ = 0;
  std::vector<json> records_;
  std::ostringstream summary_;
};

/// Population from a manifest, with rejections recorded in the report.
Population load_for_report(const std::filesystem::path& manifest, bool admissibility,
                           const std::string& role, Report& report);

/// AIRC files under <out>/templates plus <out>/manifest.tsv with relative paths.
void write_population(const OutputDir& out, std::span<const IrisTemplate> templates,
                      const std::vector<std::string>& file_stems);

std::string fmr_label(double fmr);          // 0.001 -> "0.1%"
std::string fixed(double v, int decimals);  // printf("%.*f")

/// Text table: rows x FMR columns, each cell "OR/AND/XOR" percentages.
class CoverageTable {
 public:
  CoverageTable(std::vector<double> fmrs, std::vector<MixOp> ops)
      : fmrs_(std::move(fmrs)), ops_(std::move(ops)) {}

  void set(const std::string& row, std::size_t fmr_index, MixOp op, double percent);
  std::string render(const std::string& row_header) const;

 private:
  std::vector<double> fmrs_;
  std::vector<MixOp> ops_;
  std::vector<std::string> rows_;
  std::map<std::pair<std::string, std::size_t>, std::map<MixOp, double>> cells_;
};

}  // namespace alphamix::cli
