#pragma once

#include <cstddef>
#include <vector>

#include "alphamix/iris_template.hpp"

namespace alphamix {

/// Result of a masked fractional Hamming comparison.
struct MatchOutcome {
  enum class Kind { Score, Incomparable };

  Kind kind = Kind::Incomparable;
  double score = 0.0;          // meaningful only for Kind::Score
  long shift = 0;              // column shift applied to the second template
  std::size_t disagreeing = 0; // differing bits inside the joint mask
  std::size_t compared = 0;    // popcount of the joint mask

  bool comparable() const noexcept { return kind == Kind::Score; }

  /// True iff comparable and score <= tau. Incomparable never matches.
  bool matches(double tau) const noexcept { return comparable() && score <= tau; }

  friend bool operator==(const MatchOutcome&, const MatchOutcome&) = default;
};

/// Masked fractional Hamming distance with circular column-shift search.
///
/// For every s in [-shift_range, +shift_range] the code and mask of `b` are
/// rotated together by s columns and
///     |(codeA ^ codeB_s) & maskA & maskB_s| / |maskA & maskB_s|
/// is evaluated. The minimum over shifts with a nonempty joint mask is
/// returned; ties keep the shift with the smaller magnitude, then the
/// negative one. If no shift has a nonempty joint mask the outcome is
/// Incomparable.
///
/// Throws DimensionError on shape mismatch and InvalidArgument when
/// shift_range >= cols.
MatchOutcome hamming_distance(const IrisTemplate& a, const IrisTemplate& b,
                              std::size_t shift_range);

/// Precomputed rotations of one template, for matching it as the second
/// argument of hamming_distance against many others.
class ShiftedProbe {
 public:
  ShiftedProbe(const IrisTemplate& probe, std::size_t shift_range);

  /// Identical to hamming_distance(other, probe, shift_range).
  MatchOutcome match(const IrisTemplate& other) const;

  std::size_t shift_range() const noexcept { return shift_range_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

 private:
  struct Rotation {
    long shift;
    BitGrid code;
    BitGrid mask;
  };

  std::size_t shift_range_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rotation> rotations_;  // search order: 0, -1, +1, -2, +2, ...
};

}  // namespace alphamix
