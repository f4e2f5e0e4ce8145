#include "alphamix/synthgen.hpp"

#include <algorithm>
#include <cstdio>

#include "alphamix/error.hpp"
#include "alphamix/parallel.hpp"
#include "alphamix/rng.hpp"

namespace alphamix {
namespace {

enum Stream : std::uint64_t { kPrototype = 1, kWolfPick = 2, kSample = 3, kLayout = 4 };

std::string identity_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "id%03zu", i);
  return buf;
}

std::string sample_name(std::size_t identity, std::size_t s) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "id%03zu_%02zu", identity, s + 1);
  return buf;
}

}  // namespace

void HmmParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("HMM alpha must lie in [0, 1]");
  if (rows == 0 || cols == 0) throw InvalidArgument("HMM code shape must be positive");
}

BitGrid hmm_code(const HmmParams& params) {
  params.validate();
  Rng rng(derive_seed(params.seed, kPrototype));
  BitGrid grid(params.rows, params.cols);
  for (std::size_t r = 0; r < params.rows; ++r) {
    bool bit = rng.bernoulli(0.5);
    grid.set(r, 0, bit);
    for (std::size_t c = 1; c < params.cols; ++c) {
      if (!rng.bernoulli(params.alpha)) bit = !bit;
      grid.set(r, c, bit);
    }
  }
  return grid;
}

BitGrid majority_vote(std::span<const BitGrid* const> grids) {
  if (grids.empty()) throw ArityError("majority vote of zero grids");
  const BitGrid& first = *grids.front();
  for (const BitGrid* g : grids) {
    if (!g->same_shape(first)) throw DimensionError("majority vote over grids of different shape");
  }
  BitGrid out(first.rows(), first.cols());
  const std::size_t n = grids.size();
  for (std::size_t r = 0; r < first.rows(); ++r) {
    for (std::size_t c = 0; c < first.cols(); ++c) {
      std::size_t ones = 0;
      for (const BitGrid* g : grids) ones += g->get(r, c) ? 1 : 0;
      const bool bit = 2 * ones == n ? first.get(r, c) : 2 * ones > n;
      out.set(r, c, bit);
    }
  }
  return out;
}

void SimPopulationSpec::validate() const {
  if (n_identities == 0 || samples_per_identity == 0) {
    throw InvalidArgument("simulated population needs identities and samples");
  }
  if (!(intra_flip_rate >= 0.0 && intra_flip_rate < 0.5)) {
    throw InvalidArgument("intra flip rate must lie in [0, 0.5)");
  }
  if (!(mask_density > 0.0 && mask_density <= 1.0)) {
    throw InvalidArgument("mask density must lie in (0, 1]");
  }
  if (wolf_count > n_identities) throw InvalidArgument("wolf count exceeds identity count");
  if (wolf_count > 0) {
    if (wolf_blend_arity < 3) throw InvalidArgument("wolf blend arity must be at least 3");
    if (wolf_blend_arity > n_identities - wolf_count) {
      throw InvalidArgument("wolf blend arity " + std::to_string(wolf_blend_arity) +
                            " exceeds the " + std::to_string(n_identities - wolf_count) +
                            " ordinary prototypes");
    }
  }
  HmmParams{hmm_alpha, rows, cols, seed}.validate();
}

SynthPopulation synth_population(const SimPopulationSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_identities;

  // Choose which identity slots hold wolves.
  std::vector<std::size_t> slots(n);
  for (std::size_t i = 0; i < n; ++i) slots[i] = i;
  {
    Rng layout(derive_seed(spec.seed, kLayout));
    for (std::size_t i = 0; i < spec.wolf_count; ++i) {
      std::swap(slots[i], slots[i + layout.below(n - i)]);
    }
  }
  std::vector<char> is_wolf(n, 0);
  for (std::size_t i = 0; i < spec.wolf_count; ++i) is_wolf[slots[i]] = 1;

  std::vector<BitGrid> prototypes(n);
  std::vector<std::size_t> ordinary;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_wolf[i]) ordinary.push_back(i);
  }
  parallel_for(ordinary.size(), [&](std::size_t j) {
    const std::size_t id = ordinary[j];
    prototypes[id] = hmm_code({spec.hmm_alpha, spec.rows, spec.cols,
                               derive_seed(spec.seed, kPrototype, id)});
  });
  for (std::size_t id = 0; id < n; ++id) {
    if (!is_wolf[id]) continue;
    Rng pick(derive_seed(spec.seed, kWolfPick, id));
    std::vector<std::size_t> pool = ordinary;
    std::vector<const BitGrid*> chosen;
    for (std::size_t i = 0; i < spec.wolf_blend_arity; ++i) {
      std::swap(pool[i], pool[i + pick.below(pool.size() - i)]);
      chosen.push_back(&prototypes[pool[i]]);
    }
    prototypes[id] = majority_vote(chosen);
  }

  const std::size_t per = spec.samples_per_identity;
  std::vector<IrisTemplate> samples(n * per);
  parallel_for(n, [&](std::size_t id) {
    Rng rng(derive_seed(spec.seed, kSample, id));
    for (std::size_t s = 0; s < per; ++s) {
      BitGrid code = prototypes[id];
      BitGrid mask(spec.rows, spec.cols);
      for (std::size_t r = 0; r < spec.rows; ++r) {
        for (std::size_t c = 0; c < spec.cols; ++c) {
          if (spec.intra_flip_rate > 0.0 && rng.bernoulli(spec.intra_flip_rate)) {
            code.set(r, c, !code.get(r, c));
          }
          mask.set(r, c, rng.bernoulli(spec.mask_density));
        }
      }
      samples[id * per + s] =
          IrisTemplate(std::move(code), std::move(mask), sample_name(id, s), identity_name(id));
    }
  });

  SynthPopulation out{Population(std::move(samples)), {}};
  for (std::size_t id = 0; id < n; ++id) {
    if (is_wolf[id]) out.wolf_identities.push_back(identity_name(id));
  }
  return out;
}

}  // namespace alphamix
