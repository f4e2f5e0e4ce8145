#pragma once

// Helpers shared by the wolves and attack commands.

#include <cstdint>

#include "alphamix/attacks.hpp"
#include "alphamix/calibration.hpp"
#include "alphamix/error.hpp"
#include "commands.hpp"
#include "run_context.hpp"

namespace alphamix::cli {

inline SplitSpec split_spec(const SplitOptions& s, std::uint64_t seed) {
  SplitSpec spec;
  spec.mode = s.mode == "disjoint" ? SplitMode::DisjointIdentities : SplitMode::SameSet;
  spec.train_fraction = spec.mode == SplitMode::SameSet ? 1.0 : s.train_fraction;
  spec.seed = seed;
  return spec;
}

inline json threshold_record(double fmr, const Threshold& t, const std::string& side = {}) {
  json r = {{"record", "threshold"}, {"fmr", fmr}, {"tau", t.tau},
            {"achieved_fmr", t.achieved_fmr}, {"no_match", t.no_match}};
  if (!side.empty()) r["side"] = side;
  return r;
}

inline json wolf_record(std::size_t rank, const WolfRecord& w) {
  return {{"record", "wolf"},
          {"rank", rank},
          {"identity", w.sample.identity_id()},
          {"sample", w.sample.sample_id()},
          {"false_matches", w.false_match_count},
          {"matched_identities", w.matched_identities.size()}};
}

}  // namespace alphamix::cli
