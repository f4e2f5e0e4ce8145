#include "alphamix/iris_template.hpp"

#include <algorithm>
#include <cctype>

#include "alphamix/error.hpp"

namespace alphamix {
namespace {

void apply(MixOp op, BitGrid& acc, const BitGrid& rhs) {
  switch (op) {
    case MixOp::And: acc &= rhs; break;
    case MixOp::Or: acc |= rhs; break;
    case MixOp::Xor: acc ^= rhs; break;
  }
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

IrisTemplate::IrisTemplate(BitGrid code, BitGrid mask, std::string sample_id,
                           std::string identity_id)
    : code_(std::move(code)),
      mask_(std::move(mask)),
      sample_id_(std::move(sample_id)),
      identity_id_(std::move(identity_id)) {
  if (!code_.same_shape(mask_)) {
    throw DimensionError("template '" + sample_id_ + "': code " +
                         std::to_string(code_.rows()) + "x" + std::to_string(code_.cols()) +
                         " vs mask " + std::to_string(mask_.rows()) + "x" +
                         std::to_string(mask_.cols()));
  }
}

IrisTemplate IrisTemplate::with_full_mask(BitGrid code, std::string sample_id,
                                          std::string identity_id) {
  BitGrid mask = BitGrid::ones(code.rows(), code.cols());
  return IrisTemplate(std::move(code), std::move(mask), std::move(sample_id),
                      std::move(identity_id));
}

IrisTemplate IrisTemplate::relabeled(std::string sample_id, std::string identity_id) const {
  return IrisTemplate(code_, mask_, std::move(sample_id), std::move(identity_id));
}

std::string_view to_string(MixOp op) noexcept {
  switch (op) {
    case MixOp::And: return "AND";
    case MixOp::Or: return "OR";
    case MixOp::Xor: return "XOR";
  }
  return "?";
}

std::string_view to_string(MaskPolicy policy) noexcept {
  return policy == MaskPolicy::SameOperator ? "same-operator" : "intersection";
}

std::optional<MixOp> parse_mix_op(std::string_view text) {
  const std::string t = lower(text);
  if (t == "and") return MixOp::And;
  if (t == "or") return MixOp::Or;
  if (t == "xor") return MixOp::Xor;
  return std::nullopt;
}

std::optional<MaskPolicy> parse_mask_policy(std::string_view text) {
  const std::string t = lower(text);
  if (t == "same-operator" || t == "same") return MaskPolicy::SameOperator;
  if (t == "intersection" || t == "and") return MaskPolicy::Intersection;
  return std::nullopt;
}

IrisTemplate mix_members(MixOp op, std::span<const IrisTemplate* const> inputs,
                         MaskPolicy policy) {
  if (inputs.empty()) throw ArityError("cannot mix an empty set of templates");
  if (inputs.size() == 1) return *inputs.front();

  const IrisTemplate& first = *inputs.front();
  BitGrid code = first.code();
  BitGrid mask = first.mask();
  const MixOp mask_op = policy == MaskPolicy::SameOperator ? op : MixOp::And;
  std::string samples = first.sample_id();
  std::string identities = first.identity_id();
  for (const IrisTemplate* t : inputs.subspan(1)) {
    if (!t->same_shape(first)) {
      throw DimensionError("cannot mix '" + first.sample_id() + "' with '" + t->sample_id() +
                           "': shapes differ");
    }
    apply(op, code, t->code());
    apply(mask_op, mask, t->mask());
    samples += "+" + t->sample_id();
    identities += "+" + t->identity_id();
  }
  const std::string tag = lower(to_string(op));
  return IrisTemplate(std::move(code), std::move(mask), tag + "(" + samples + ")",
                      "mix:" + tag + "(" + identities + ")");
}

IrisTemplate bitwise_mix(MixOp op, std::span<const IrisTemplate> inputs, MaskPolicy policy) {
  if (inputs.size() < 2) {
    throw ArityError("bitwise_mix needs at least 2 templates, got " +
                     std::to_string(inputs.size()));
  }
  std::vector<const IrisTemplate*> refs;
  refs.reserve(inputs.size());
  for (const IrisTemplate& t : inputs) refs.push_back(&t);
  return mix_members(op, refs, policy);
}

}  // namespace alphamix
