#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "alphamix/iris_template.hpp"
#include "alphamix/menagerie.hpp"
#include "alphamix/population.hpp"

namespace alphamix {

struct SeedRef {
  std::string identity_id;
  std::string sample_id;

  friend bool operator==(const SeedRef&, const SeedRef&) = default;
};

enum class MixtureOrigin { AlphaWolf, AlphaMammal };

std::string_view to_string(MixtureOrigin origin) noexcept;

enum class StepAction { Append, Remove };

/// One accepted move of the hill climber.
struct SearchStep {
  std::size_t iteration = 0;
  StepAction action = StepAction::Append;
  std::string sample_id;             // sample appended or removed
  std::vector<std::string> members;  // sample ids of the state after the move
  std::size_t coverage = 0;          // training reward of that state
  bool lateral = false;              // accepted with equal coverage
};

/// A mixed template and everything needed to rebuild it.
struct MixtureRecord {
  IrisTemplate mixture;
  MixOp op = MixOp::Xor;
  MaskPolicy mask_policy = MaskPolicy::SameOperator;
  std::vector<SeedRef> seeds;  // in mixing order
  std::size_t k = 0;           // == seeds.size()
  MixtureOrigin origin = MixtureOrigin::AlphaWolf;
  std::size_t enumeration_index = 0;
  std::string encoding;  // free-form label of the feature encoding
  std::vector<SearchStep> trace;

  std::set<std::string> seed_identities() const;
};

/// Rebuilds a record's template from its seeds, looked up by sample id in
/// `source`. Throws InvalidArgument if a seed is missing.
IrisTemplate remix(const MixtureRecord& record, const Population& source);

/// Code-density band; a mixture is rejected iff density < lo or density > hi.
struct DensityFilter {
  double lo = 0.3;
  double hi = 0.7;

  bool rejects(const IrisTemplate& t) const noexcept {
    const double d = t.code().density();
    return d < lo || d > hi;
  }
};

struct SearchConfig {
  std::vector<MixOp> operators{MixOp::And, MixOp::Or, MixOp::Xor};
  std::size_t max_iterations = 100;
  std::size_t lateral_move_budget = 5;
  std::size_t lateral_cutoff_size = 3;
  std::optional<DensityFilter> density_filter;

  /// Throws InvalidArgument when the density band is not lo < hi in [0, 1].
  void validate() const;
};

/// Every k-combination of the wolves (k ascending, combinations in
/// lexicographic order of wolf rank) mixed with every operator (AND, OR,
/// XOR order): sum_k C(n, k) * |operators| records.
///
/// Throws InvalidArgument if a k is outside {2, 3, 4}, no operator is given,
/// or there are fewer wolves than the largest k.
std::vector<MixtureRecord> enumerate_alpha_wolves(std::span<const WolfRecord> wolves,
                                                  std::span<const std::size_t> k_values,
                                                  std::span<const MixOp> operators,
                                                  MaskPolicy mask_policy);

/// Coverage of every mixture against `test` with its seed identities
/// excluded. Evaluated in parallel; order matches the input.
std::vector<CoverageReport> evaluate_mixtures(std::span<const MixtureRecord> mixtures,
                                              const Population& test, double tau,
                                              std::size_t shift_range, double fmr_label = 0.0);

struct BestMixture {
  std::size_t index = 0;  // position in the input span
  MixtureRecord record;
  CoverageReport coverage;
};

/// The mixture with the highest identity coverage over `test` (seed
/// identities excluded). Density-filtered mixtures are dropped first. Ties
/// go to the lower enumeration_index, then to the earlier input position.
///
/// Throws InvalidArgument if no mixture survives filtering.
BestMixture best_alpha_wolf(std::span<const MixtureRecord> mixtures, const Population& test,
                            double tau, const std::optional<DensityFilter>& density_filter,
                            std::size_t shift_range, double fmr_label = 0.0);

/// Greedy local search over sets of training samples mixed with `op`.
///
/// The reward of a set is the number of training samples its mixture matches
/// at tau (contributors included). The first move takes the best single
/// sample. Each later iteration scans all single-sample appends, then all
/// single-sample removals, in population order. A neighbor is acceptable
/// when it strictly improves the reward, or when it ties, its size is at
/// most lateral_cutoff_size and lateral budget remains. Neighbors whose
/// mixture equals an already visited state, or that fail the density
/// filter, are skipped. The first acceptable neighbor with the highest
/// reward is taken. The search stops when none is acceptable or after
/// max_iterations iterations.
///
/// Throws InvalidArgument for an empty population, an invalid config, or
/// when every single sample fails the density filter.
MixtureRecord hill_climb(const Population& train, double tau, MixOp op,
                         const SearchConfig& config, MaskPolicy mask_policy,
                         std::size_t shift_range);

enum class ThresholdSource {
  AttackSide,  // tau calibrated on the population the mixtures came from
  TargetSide,  // tau calibrated on the attacked population
};

std::string_view to_string(ThresholdSource source) noexcept;

struct CrossAttackRow {
  std::size_t mixture_index = 0;
  std::string encoding;
  ThresholdSource source = ThresholdSource::TargetSide;
  CoverageReport coverage;
};

/// Evaluates each mixture against `target` once per requested threshold
/// source, seed identities excluded. Rows are mixture-major, then in the
/// order of `sources`.
///
/// Throws DimensionError when a mixture's shape differs from the target's.
std::vector<CrossAttackRow> cross_attack(std::span<const MixtureRecord> mixtures,
                                         const Population& target,
                                         std::span<const ThresholdSource> sources,
                                         double tau_attack, double tau_target,
                                         std::size_t shift_range, double fmr_label = 0.0);

}  // namespace alphamix
