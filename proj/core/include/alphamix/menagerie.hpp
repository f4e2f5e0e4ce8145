#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "alphamix/iris_template.hpp"
#include "alphamix/population.hpp"

namespace alphamix {

/// How many samples and identities a template matches at a threshold.
struct CoverageReport {
  std::size_t sample_matches = 0;
  std::size_t identity_matches = 0;
  std::set<std::string> matched_identities;
  std::size_t evaluated_identities = 0;  // identities not excluded
  double threshold = 0.0;
  double fmr_label = 0.0;

  /// identity_matches / evaluated_identities, as a percentage.
  double identity_percent() const noexcept {
    return evaluated_identities == 0
               ? 0.0
               : 100.0 * static_cast<double>(identity_matches) /
                     static_cast<double>(evaluated_identities);
  }
};

/// Matches `t` (rotated, as the second argument of hamming_distance) against
/// every sample of `p` whose identity is not in `exclude_identities`.
/// A sample matches when its score is <= tau; Incomparable never matches.
///
/// Runs serially; callers parallelize across templates.
/// Throws DimensionError on shape mismatch.
CoverageReport coverage(const IrisTemplate& t, const Population& p, double tau,
                        const std::set<std::string>& exclude_identities,
                        std::size_t shift_range, double fmr_label = 0.0);

struct WolfRecord {
  IrisTemplate sample;
  std::size_t position = 0;          // index in the population it came from
  std::size_t false_match_count = 0; // foreign samples matched at tau
  std::set<std::string> matched_identities;
};

struct WolfSelection {
  std::size_t min_matches = 1;
  std::size_t max_per_identity = 1;
  std::size_t max_wolves = 6;
};

/// Samples of `train` that falsely match at least `min_matches` samples of
/// other identities at tau, ranked by descending count with ties broken by
/// (identity id, sample id). At most `max_per_identity` wolves are kept per
/// identity and the list is truncated to `max_wolves`.
std::vector<WolfRecord> select_wolves(const Population& train, double tau,
                                      const WolfSelection& selection,
                                      std::size_t shift_range);

/// "identity<TAB>sample<TAB>count<TAB>identities" lines with a header.
void write_wolves(std::ostream& out, const std::vector<WolfRecord>& wolves);

}  // namespace alphamix
