#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "alphamix/population.hpp"

namespace alphamix {

/// Sorted imposter scores plus the count of pairs that could not be scored.
class ScoreDistribution {
 public:
  ScoreDistribution() = default;

  /// Sorts `scores`. Throws InvalidArgument if a score is outside [0, 1].
  explicit ScoreDistribution(std::vector<double> scores, std::size_t incomparable_count = 0);

  const std::vector<double>& scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return scores_.size(); }
  bool empty() const noexcept { return scores_.empty(); }
  std::size_t incomparable_count() const noexcept { return incomparable_; }
  std::size_t pair_count() const noexcept { return scores_.size() + incomparable_; }

  /// Number of scores <= tau.
  std::size_t count_at_or_below(double tau) const noexcept;

 private:
  std::vector<double> scores_;
  std::size_t incomparable_ = 0;
};

/// One score per unordered pair of samples from different identities.
/// Incomparable pairs are counted, not scored. Throws InvalidArgument when
/// the population has fewer than two identities.
ScoreDistribution imposter_scores(const Population& p, std::size_t shift_range);

struct Threshold {
  double tau = 0.0;
  double requested_fmr = 0.0;
  double achieved_fmr = 0.0;  // fmr_at_threshold at tau
  std::size_t budget = 0;     // floor(fmr * N): matches the request allows
  bool no_match = false;      // budget was zero; tau sits below every score
};

/// Largest observed score tau with count(score <= tau) / N <= fmr.
/// Thresholds are always observed order statistics. When floor(fmr * N)
/// is zero, tau is the next double below the minimum score and
/// `no_match` is set.
///
/// Throws InvalidArgument for an empty distribution or fmr outside (0, 1].
Threshold threshold_at_fmr(const ScoreDistribution& d, double fmr);

/// count(score <= tau) / N. Throws InvalidArgument if `d` is empty.
double fmr_at_threshold(const ScoreDistribution& d, double tau);

/// One score per line, fixed 10-decimal formatting.
void write_scores(std::ostream& out, const ScoreDistribution& d);

}  // namespace alphamix
