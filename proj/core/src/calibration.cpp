#include "alphamix/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "alphamix/error.hpp"
#include "alphamix/matching.hpp"
#include "alphamix/parallel.hpp"

namespace alphamix {

ScoreDistribution::ScoreDistribution(std::vector<double> scores, std::size_t incomparable_count)
    : scores_(std::move(scores)), incomparable_(incomparable_count) {
  for (double s : scores_) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw InvalidArgument("imposter score " + std::to_string(s) + " outside [0, 1]");
    }
  }
  std::sort(scores_.begin(), scores_.end());
}

std::size_t ScoreDistribution::count_at_or_below(double tau) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(scores_.begin(), scores_.end(), tau) -
                                  scores_.begin());
}

ScoreDistribution imposter_scores(const Population& p, std::size_t shift_range) {
  if (p.identity_count() < 2) {
    throw InvalidArgument("imposter scores need at least two identities, got " +
                          std::to_string(p.identity_count()));
  }
  // Row j holds the pairs (i, j) for i < j, scored with j rotated.
  std::vector<std::vector<double>> rows(p.size());
  std::vector<std::size_t> incomparable(p.size(), 0);
  parallel_for(p.size(), [&](std::size_t j) {
    const ShiftedProbe probe(p[j], shift_range);
    for (std::size_t i = 0; i < j; ++i) {
      if (p[i].identity_id() == p[j].identity_id()) continue;
      const MatchOutcome m = probe.match(p[i]);
      if (m.comparable()) {
        rows[j].push_back(m.score);
      } else {
        ++incomparable[j];
      }
    }
  });

  std::vector<double> all;
  std::size_t n_incomparable = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    all.insert(all.end(), rows[j].begin(), rows[j].end());
    n_incomparable += incomparable[j];
  }
  return ScoreDistribution(std::move(all), n_incomparable);
}

Threshold threshold_at_fmr(const ScoreDistribution& d, double fmr) {
  if (d.empty()) throw InvalidArgument("threshold requested from an empty score distribution");
  if (!(fmr > 0.0 && fmr <= 1.0)) {
    throw InvalidArgument("target FMR must lie in (0, 1], got " + std::to_string(fmr));
  }
  const auto& s = d.scores();
  const std::size_t n = s.size();
  // The relative nudge absorbs products such as 0.29 * 100 = 28.999...;
  // the count check below keeps the result honest.
  auto budget = static_cast<std::size_t>(std::floor(fmr * static_cast<double>(n) * (1 + 1e-12)));
  budget = std::min(budget, n);
  while (budget > 0 && static_cast<double>(budget) / static_cast<double>(n) > fmr) --budget;

  Threshold t;
  t.requested_fmr = fmr;
  t.budget = budget;

  std::size_t idx = budget;  // candidate: s[idx - 1]
  if (idx > 0 && idx < n && s[idx] == s[idx - 1]) {
    // Ties straddle the budget; fall back below the tied value.
    idx = static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), s[idx - 1]) - s.begin());
  }
  if (idx == 0) {
    t.tau = std::nextafter(s.front(), -std::numeric_limits<double>::infinity());
    t.no_match = true;
  } else {
    t.tau = s[idx - 1];
  }
  t.achieved_fmr = fmr_at_threshold(d, t.tau);
  return t;
}

double fmr_at_threshold(const ScoreDistribution& d, double tau) {
  if (d.empty()) throw InvalidArgument("FMR requested from an empty score distribution");
  return static_cast<double>(d.count_at_or_below(tau)) / static_cast<double>(d.size());
}

void write_scores(std::ostream& out, const ScoreDistribution& d) {
  char buf[32];
  for (double s : d.scores()) {
    std::snprintf(buf, sizeof buf, "%.10f\n", s);
    out << buf;
  }
}

}  // namespace alphamix
