#include "alphamix/menagerie.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "alphamix/matching.hpp"
#include "alphamix/parallel.hpp"

namespace alphamix {

CoverageReport coverage(const IrisTemplate& t, const Population& p, double tau,
                        const std::set<std::string>& exclude_identities,
                        std::size_t shift_range, double fmr_label) {
  CoverageReport report;
  report.threshold = tau;
  report.fmr_label = fmr_label;
  if (p.empty()) return report;

  const ShiftedProbe probe(t, shift_range);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (exclude_identities.count(p[i].identity_id())) continue;
    if (!probe.match(p[i]).matches(tau)) continue;
    ++report.sample_matches;
    report.matched_identities.insert(p[i].identity_id());
  }
  report.identity_matches = report.matched_identities.size();
  for (const std::string& id : p.identities()) {
    if (!exclude_identities.count(id)) ++report.evaluated_identities;
  }
  return report;
}

std::vector<WolfRecord> select_wolves(const Population& train, double tau,
                                      const WolfSelection& selection,
                                      std::size_t shift_range) {
  const std::size_t n = train.size();
  // match[j][i] for i < j: whether the cross-identity pair matches at tau.
  std::vector<std::vector<char>> match(n);
  parallel_for(n, [&](std::size_t j) {
    const ShiftedProbe probe(train[j], shift_range);
    match[j].assign(j, 0);
    for (std::size_t i = 0; i < j; ++i) {
      if (train[i].identity_id() == train[j].identity_id()) continue;
      match[j][i] = probe.match(train[i]).matches(tau) ? 1 : 0;
    }
  });

  std::vector<WolfRecord> candidates;
  for (std::size_t a = 0; a < n; ++a) {
    WolfRecord rec{train[a], a, 0, {}};
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const bool m = a < b ? match[b][a] : match[a][b];
      if (!m) continue;
      ++rec.false_match_count;
      rec.matched_identities.insert(train[b].identity_id());
    }
    if (rec.false_match_count >= selection.min_matches && rec.false_match_count > 0) {
      candidates.push_back(std::move(rec));
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const WolfRecord& x, const WolfRecord& y) {
    if (x.false_match_count != y.false_match_count) {
      return x.false_match_count > y.false_match_count;
    }
    if (x.sample.identity_id() != y.sample.identity_id()) {
      return x.sample.identity_id() < y.sample.identity_id();
    }
    return x.sample.sample_id() < y.sample.sample_id();
  });

  std::vector<WolfRecord> wolves;
  std::map<std::string, std::size_t> per_identity;
  for (WolfRecord& c : candidates) {
    if (wolves.size() >= selection.max_wolves) break;
    std::size_t& used = per_identity[c.sample.identity_id()];
    if (used >= selection.max_per_identity) continue;
    ++used;
    wolves.push_back(std::move(c));
  }
  return wolves;
}

void write_wolves(std::ostream& out, const std::vector<WolfRecord>& wolves) {
  out << "# identity\tsample\tfalse_matches\tmatched_identities\n";
  for (const WolfRecord& w : wolves) {
    out << w.sample.identity_id() << '\t' << w.sample.sample_id() << '\t'
        << w.false_match_count << '\t' << w.matched_identities.size() << '\n';
  }
}

}  // namespace alphamix
