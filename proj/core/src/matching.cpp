#include "alphamix/matching.hpp"

#include <bit>
#include <cstdint>
#include <string>

#include "alphamix/error.hpp"

namespace alphamix {
namespace {

// a/b < c/d for bit counts with positive denominators. Counts stay below
// 2^32 for any grid that fits the AIRC header, so the products fit.
bool less_ratio(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return a * d < c * b;
}

}  // namespace

ShiftedProbe::ShiftedProbe(const IrisTemplate& probe, std::size_t shift_range)
    : shift_range_(shift_range), rows_(probe.rows()), cols_(probe.cols()) {
  if (shift_range >= cols_ && cols_ > 0) {
    throw InvalidArgument("shift range " + std::to_string(shift_range) +
                          " must be smaller than the column count " + std::to_string(cols_));
  }
  rotations_.reserve(2 * shift_range + 1);
  rotations_.push_back({0, probe.code(), probe.mask()});
  for (std::size_t k = 1; k <= shift_range; ++k) {
    for (long s : {-static_cast<long>(k), static_cast<long>(k)}) {
      rotations_.push_back({s, probe.code().rotated(s), probe.mask().rotated(s)});
    }
  }
}

MatchOutcome ShiftedProbe::match(const IrisTemplate& other) const {
  if (other.rows() != rows_ || other.cols() != cols_) {
    throw DimensionError("cannot match '" + other.sample_id() + "' (" +
                         std::to_string(other.rows()) + "x" + std::to_string(other.cols()) +
                         ") against a " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " template");
  }
  const auto a_code = other.code().words();
  const auto a_mask = other.mask().words();

  MatchOutcome best;
  for (const Rotation& rot : rotations_) {
    const auto b_code = rot.code.words();
    const auto b_mask = rot.mask.words();
    std::size_t diff = 0;
    std::size_t valid = 0;
    for (std::size_t i = 0; i < a_code.size(); ++i) {
      const BitGrid::Word joint = a_mask[i] & b_mask[i];
      valid += static_cast<std::size_t>(std::popcount(joint));
      diff += static_cast<std::size_t>(std::popcount((a_code[i] ^ b_code[i]) & joint));
    }
    if (valid == 0) continue;
    if (!best.comparable() || less_ratio(diff, valid, best.disagreeing, best.compared)) {
      best.kind = MatchOutcome::Kind::Score;
      best.shift = rot.shift;
      best.disagreeing = diff;
      best.compared = valid;
    }
  }
  if (best.comparable()) {
    best.score = static_cast<double>(best.disagreeing) / static_cast<double>(best.compared);
  }
  return best;
}

MatchOutcome hamming_distance(const IrisTemplate& a, const IrisTemplate& b,
                              std::size_t shift_range) {
  if (!a.same_shape(b)) {
    throw DimensionError("cannot compare '" + a.sample_id() + "' (" + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + ") with '" + b.sample_id() + "' (" +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
  return ShiftedProbe(b, shift_range).match(a);
}

}  // namespace alphamix
