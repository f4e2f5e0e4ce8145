#include "alphamix/population.hpp"

#include <cmath>
#include <set>

#include "alphamix/error.hpp"
#include "alphamix/rng.hpp"

namespace alphamix {

Population::Population(std::vector<IrisTemplate> samples) : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const IrisTemplate& t = samples_[i];
    if (!t.same_shape(samples_.front())) {
      throw DimensionError("sample '" + t.sample_id() + "' is " + std::to_string(t.rows()) +
                           "x" + std::to_string(t.cols()) + " but the population is " +
                           std::to_string(rows()) + "x" + std::to_string(cols()));
    }
    if (!sample_index_.emplace(t.sample_id(), i).second) {
      throw InvalidArgument("duplicate sample id '" + t.sample_id() + "'");
    }
    auto [it, inserted] = identity_index_.try_emplace(t.identity_id());
    if (inserted) identities_.push_back(t.identity_id());
    it->second.push_back(i);
  }
}

std::span<const std::size_t> Population::samples_of(const std::string& identity) const {
  const auto it = identity_index_.find(identity);
  if (it == identity_index_.end()) return {};
  return it->second;
}

std::optional<std::size_t> Population::find_sample(const std::string& sample_id) const {
  const auto it = sample_index_.find(sample_id);
  if (it == sample_index_.end()) return std::nullopt;
  return it->second;
}

Population Population::restricted_to(std::span<const std::string> keep) const {
  const std::set<std::string> wanted(keep.begin(), keep.end());
  std::vector<IrisTemplate> out;
  for (const IrisTemplate& t : samples_) {
    if (wanted.count(t.identity_id())) out.push_back(t);
  }
  return Population(std::move(out));
}

PopulationSplit split(const Population& p, const SplitSpec& spec) {
  if (p.empty()) throw InvalidArgument("cannot split an empty population");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction <= 1.0)) {
    throw InvalidArgument("train fraction must lie in (0, 1], got " +
                          std::to_string(spec.train_fraction));
  }
  if (spec.mode == SplitMode::SameSet) return {p, p};

  std::vector<std::string> ids = p.identities();
  Rng rng(derive_seed(spec.seed, 0x5911));
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng.below(i)]);
  }
  const auto n_train = static_cast<std::size_t>(
      std::llround(spec.train_fraction * static_cast<double>(ids.size())));
  if (n_train == 0 || n_train >= ids.size()) {
    throw InvalidArgument("train fraction " + std::to_string(spec.train_fraction) + " over " +
                          std::to_string(ids.size()) +
                          " identities leaves an empty train or test side");
  }
  const std::span<const std::string> all(ids);
  return {p.restricted_to(all.first(n_train)), p.restricted_to(all.subspan(n_train))};
}

}  // namespace alphamix
