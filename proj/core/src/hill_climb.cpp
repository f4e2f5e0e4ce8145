#include "alphamix/attacks.hpp"

#include <algorithm>

#include "alphamix/error.hpp"
#include "alphamix/parallel.hpp"

namespace alphamix {
namespace {

using StateKey = std::vector<BitGrid::Word>;

// States are identified by the bits of their mixture, so sets that mix to
// the same template (AND/OR duplicates of identical samples) count as one.
StateKey key_of(const IrisTemplate& t) {
  StateKey key(t.code().words().begin(), t.code().words().end());
  key.insert(key.end(), t.mask().words().begin(), t.mask().words().end());
  return key;
}

struct Neighbor {
  std::vector<std::size_t> members;  // sorted population positions
  StepAction action = StepAction::Append;
  std::size_t moved = 0;
  std::optional<IrisTemplate> mixture;  // empty when filtered out
  std::size_t reward = 0;
};

}  // namespace

MixtureRecord hill_climb(const Population& train, double tau, MixOp op,
                         const SearchConfig& config, MaskPolicy mask_policy,
                         std::size_t shift_range) {
  if (train.empty()) throw InvalidArgument("hill climbing needs a nonempty training set");
  config.validate();

  auto mix_of = [&](const std::vector<std::size_t>& members) {
    std::vector<const IrisTemplate*> refs;
    refs.reserve(members.size());
    for (std::size_t m : members) refs.push_back(&train[m]);
    return mix_members(op, refs, mask_policy);
  };

  std::vector<std::size_t> current;
  std::size_t reward = 0;
  std::size_t lateral_used = 0;
  std::set<StateKey> visited;
  std::vector<SearchStep> trace;

  for (std::size_t iteration = 1; iteration <= config.max_iterations; ++iteration) {
    std::vector<Neighbor> neighbors;
    for (std::size_t k = 0; k < train.size(); ++k) {
      if (std::binary_search(current.begin(), current.end(), k)) continue;
      Neighbor nb;
      nb.members = current;
      nb.members.insert(std::upper_bound(nb.members.begin(), nb.members.end(), k), k);
      nb.action = StepAction::Append;
      nb.moved = k;
      neighbors.push_back(std::move(nb));
    }
    if (current.size() >= 2) {
      for (std::size_t m : current) {
        Neighbor nb;
        nb.members = current;
        nb.members.erase(std::find(nb.members.begin(), nb.members.end(), m));
        nb.action = StepAction::Remove;
        nb.moved = m;
        neighbors.push_back(std::move(nb));
      }
    }

    parallel_for(neighbors.size(), [&](std::size_t i) {
      Neighbor& nb = neighbors[i];
      IrisTemplate mixed = mix_of(nb.members);
      if (config.density_filter && config.density_filter->rejects(mixed)) return;
      nb.reward = coverage(mixed, train, tau, {}, shift_range).sample_matches;
      nb.mixture = std::move(mixed);
    });

    const bool first_move = current.empty();
    const bool lateral_left = lateral_used < config.lateral_move_budget;
    const Neighbor* chosen = nullptr;
    std::optional<StateKey> chosen_key;
    for (const Neighbor& nb : neighbors) {
      if (!nb.mixture) continue;
      const bool acceptable =
          first_move || nb.reward > reward ||
          (nb.reward == reward && nb.members.size() <= config.lateral_cutoff_size &&
           lateral_left);
      if (!acceptable) continue;
      if (chosen && nb.reward <= chosen->reward) continue;
      StateKey key = key_of(*nb.mixture);
      if (visited.count(key)) continue;
      chosen = &nb;
      chosen_key = std::move(key);
    }
    if (!chosen) break;

    const bool lateral = !first_move && chosen->reward == reward;
    if (lateral) ++lateral_used;
    visited.insert(std::move(*chosen_key));
    current = chosen->members;
    reward = chosen->reward;

    SearchStep step;
    step.iteration = iteration;
    step.action = chosen->action;
    step.sample_id = train[chosen->moved].sample_id();
    for (std::size_t m : current) step.members.push_back(train[m].sample_id());
    step.coverage = reward;
    step.lateral = lateral;
    trace.push_back(std::move(step));
  }

  if (current.empty()) {
    throw InvalidArgument("hill climbing found no training sample inside the density filter");
  }

  MixtureRecord rec;
  rec.mixture = mix_of(current);
  rec.op = op;
  rec.mask_policy = mask_policy;
  for (std::size_t m : current) rec.seeds.push_back({train[m].identity_id(), train[m].sample_id()});
  rec.k = current.size();
  rec.origin = MixtureOrigin::AlphaMammal;
  rec.trace = std::move(trace);
  return rec;
}

}  // namespace alphamix
