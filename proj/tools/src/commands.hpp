#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace alphamix::cli {

using Path = std::filesystem::path;

struct SplitOptions {
  std::string mode = "same";  // same | disjoint
  double train_fraction = 0.5;
};

struct ImportOptions {
  Path manifest;
  Path out;
  double min_code_density = 0.02;
  double max_code_density = 0.98;
  double min_mask_fraction = 0.05;
  bool no_admissibility = false;
};

struct CalibrateOptions {
  Path population;
  Path out;
  std::vector<double> fmr{1e-5, 1e-4, 1e-3, 1e-2};
  std::size_t shift_range = 8;
  bool no_admissibility = false;
};

struct WolvesOptions {
  Path population;
  Path out;
  double fmr = 0.01;
  std::size_t shift_range = 8;
  std::size_t min_matches = 1;
  std::size_t max_per_identity = 1;
  std::size_t max_wolves = 6;
  SplitOptions split;
  std::uint64_t seed = 0;
  bool no_admissibility = false;
};

struct AttackOptions {
  std::string mode = "alphawolf";  // alphawolf | alphamammal | cross
  Path population;
  Path target;  // cross mode only
  Path out;
  std::vector<double> fmr{1e-5, 1e-4, 1e-3, 1e-2};
  double select_fmr = 0.01;
  std::size_t shift_range = 8;
  std::vector<std::string> ops{"or", "and", "xor"};
  std::vector<std::size_t> k{2, 3, 4};
  std::string mask_policy = "same-operator";
  bool density_filter = false;
  double density_lo = 0.3;
  double density_hi = 0.7;
  std::size_t min_matches = 1;
  std::size_t max_per_identity = 1;
  std::size_t max_wolves = 6;
  std::size_t max_iterations = 100;
  std::size_t lateral_budget = 5;
  std::size_t lateral_cutoff = 3;
  SplitOptions split;
  std::uint64_t seed = 0;
  bool no_admissibility = false;
};

struct SynthOptions {
  std::string mode = "population";  // hmm | population
  Path out;
  std::uint64_t seed = 0;
  std::size_t count = 10;
  double alpha = 0.9;
  std::size_t rows = 20;
  std::size_t cols = 512;
  std::size_t identities = 50;
  std::size_t samples = 4;
  double flip_rate = 0.05;
  std::size_t wolves = 3;
  std::size_t arity = 5;
  double mask_density = 0.85;
};

struct AnalyzeOptions {
  Path population;
  Path reference;
  Path out;
  bool include_masks = false;
  bool no_admissibility = false;
};

int cmd_import(const ImportOptions& o, std::ostream& out);
int cmd_calibrate(const CalibrateOptions& o, std::ostream& out);
int cmd_wolves(const WolvesOptions& o, std::ostream& out);
int cmd_attack(const AttackOptions& o, std::ostream& out);
int cmd_synth(const SynthOptions& o, std::ostream& out);
int cmd_analyze(const AnalyzeOptions& o, std::ostream& out);

}  // namespace alphamix::cli
