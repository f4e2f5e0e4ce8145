#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alphamix/bit_grid.hpp"

namespace alphamix {

/// A binary iris code with its validity mask. Mask bit 1 marks a usable
/// code bit; 0 marks an occluded or unreliable one.
class IrisTemplate {
 public:
  IrisTemplate() = default;

  /// Throws DimensionError unless code and mask share a shape.
  IrisTemplate(BitGrid code, BitGrid mask, std::string sample_id = {},
               std::string identity_id = {});

  /// Code with an all-ones mask.
  static IrisTemplate with_full_mask(BitGrid code, std::string sample_id = {},
                                     std::string identity_id = {});

  const BitGrid& code() const noexcept { return code_; }
  const BitGrid& mask() const noexcept { return mask_; }
  const std::string& sample_id() const noexcept { return sample_id_; }
  const std::string& identity_id() const noexcept { return identity_id_; }

  std::size_t rows() const noexcept { return code_.rows(); }
  std::size_t cols() const noexcept { return code_.cols(); }
  bool same_shape(const IrisTemplate& other) const noexcept {
    return code_.same_shape(other.code_);
  }

  /// Bitwise equality of code and mask; ids are ignored.
  bool same_bits(const IrisTemplate& other) const noexcept {
    return code_ == other.code_ && mask_ == other.mask_;
  }

  IrisTemplate relabeled(std::string sample_id, std::string identity_id) const;

 private:
  BitGrid code_;
  BitGrid mask_;
  std::string sample_id_;
  std::string identity_id_;
};

enum class MixOp { And, Or, Xor };

/// How the mask of a mixture is formed.
enum class MaskPolicy {
  SameOperator,  // fold the mixing operator over the masks as well
  Intersection,  // AND-fold of the masks regardless of operator
};

inline constexpr MixOp kAllMixOps[] = {MixOp::And, MixOp::Or, MixOp::Xor};

std::string_view to_string(MixOp op) noexcept;
std::string_view to_string(MaskPolicy policy) noexcept;

/// Case-insensitive "and" / "or" / "xor".
std::optional<MixOp> parse_mix_op(std::string_view text);
/// "same-operator" / "intersection".
std::optional<MaskPolicy> parse_mask_policy(std::string_view text);

/// Left fold of `op` over the inputs' codes; the mask follows `policy`.
/// The result's sample id is "<op>(s1+s2+...)" and its identity id is
/// "mix:<op>(i1+i2+...)".
///
/// Throws ArityError for fewer than two inputs and DimensionError when the
/// shapes disagree.
IrisTemplate bitwise_mix(MixOp op, std::span<const IrisTemplate> inputs,
                         MaskPolicy policy = MaskPolicy::SameOperator);

/// Same fold over templates referenced by pointer (avoids copies in
/// searches). A single input is returned unchanged, which is the mixture of
/// a one-element set used by the hill climber.
IrisTemplate mix_members(MixOp op, std::span<const IrisTemplate* const> inputs,
                         MaskPolicy policy);

}  // namespace alphamix
