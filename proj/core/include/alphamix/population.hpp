#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "alphamix/iris_template.hpp"

namespace alphamix {

/// Ordered, identity-indexed set of templates sharing one shape.
///
/// Sample order is insertion (manifest) order. Identities are listed in
/// order of first appearance. Sample ids must be unique.
class Population {
 public:
  Population() = default;

  /// Throws DimensionError on mixed shapes and InvalidArgument on a
  /// duplicate sample id.
  explicit Population(std::vector<IrisTemplate> samples);

  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  std::size_t rows() const noexcept { return empty() ? 0 : samples_.front().rows(); }
  std::size_t cols() const noexcept { return empty() ? 0 : samples_.front().cols(); }

  const IrisTemplate& operator[](std::size_t i) const { return samples_[i]; }
  std::span<const IrisTemplate> samples() const noexcept { return samples_; }
  auto begin() const noexcept { return samples_.begin(); }
  auto end() const noexcept { return samples_.end(); }

  std::size_t identity_count() const noexcept { return identities_.size(); }
  const std::vector<std::string>& identities() const noexcept { return identities_; }

  /// Positions of the samples belonging to `identity` (empty if unknown).
  std::span<const std::size_t> samples_of(const std::string& identity) const;

  std::optional<std::size_t> find_sample(const std::string& sample_id) const;

  /// Samples whose identity is in `keep`, in original order.
  Population restricted_to(std::span<const std::string> keep) const;

 private:
  std::vector<IrisTemplate> samples_;
  std::vector<std::string> identities_;
  std::map<std::string, std::vector<std::size_t>> identity_index_;
  std::unordered_map<std::string, std::size_t> sample_index_;
};

enum class SplitMode {
  SameSet,             // train and test are the whole population
  DisjointIdentities,  // identity-level partition
};

struct SplitSpec {
  SplitMode mode = SplitMode::SameSet;
  double train_fraction = 1.0;  // identity-level, in (0, 1]
  std::uint64_t seed = 0;
};

struct PopulationSplit {
  Population train;
  Population test;
};

/// SameSet returns (p, p). DisjointIdentities shuffles the identity list
/// with `seed`, assigns the first round(train_fraction * n) identities to
/// train and the rest to test. Both halves keep the original sample order.
///
/// Throws InvalidArgument for an empty population, a fraction outside
/// (0, 1], or a disjoint split that would leave either side empty.
PopulationSplit split(const Population& p, const SplitSpec& spec);

}  // namespace alphamix
