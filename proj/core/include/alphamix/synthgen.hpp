#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "alphamix/bit_grid.hpp"
#include "alphamix/population.hpp"

namespace alphamix {

/// Two-state Markov source for synthetic iris codes.
struct HmmParams {
  double alpha = 0.9;  // probability that a bit repeats its left neighbour
  std::size_t rows = 20;
  std::size_t cols = 512;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Each row is an independent chain along the angular (column) axis: the
/// first bit is a fair coin, every later bit repeats its predecessor with
/// probability alpha.
BitGrid hmm_code(const HmmParams& params);

/// Bitwise majority vote; ties go to the first grid's bit.
/// Throws ArityError for an empty list and DimensionError on shape mismatch.
BitGrid majority_vote(std::span<const BitGrid* const> grids);

struct SimPopulationSpec {
  std::size_t n_identities = 50;
  std::size_t samples_per_identity = 4;
  double intra_flip_rate = 0.05;  // per-bit flip probability in [0, 0.5)
  std::size_t wolf_count = 3;
  std::size_t wolf_blend_arity = 5;  // >= 3
  double mask_density = 0.85;        // in (0, 1]
  double hmm_alpha = 0.9;
  std::size_t rows = 20;
  std::size_t cols = 512;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument on any out-of-range field, including an arity
  /// larger than the number of ordinary identities.
  void validate() const;
};

struct SynthPopulation {
  Population population;
  std::vector<std::string> wolf_identities;  // ascending
};

/// Ordinary identities get an HMM prototype; wolf identities get the
/// majority vote of `wolf_blend_arity` distinct ordinary prototypes. Each
/// sample is its identity's prototype with independent bit flips and an
/// i.i.d. Bernoulli(mask_density) mask. Identity ids are "id000", "id001",
/// ... and sample ids "id000_01", ...; wolf positions are drawn from the
/// seed. Output depends only on the spec, not on thread count.
SynthPopulation synth_population(const SimPopulationSpec& spec);

}  // namespace alphamix
