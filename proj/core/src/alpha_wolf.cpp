#include "alphamix/attacks.hpp"

#include <algorithm>

#include "alphamix/error.hpp"
#include "alphamix/parallel.hpp"

namespace alphamix {
namespace {

// Advances `idx` to the next k-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(MixtureOrigin origin) noexcept {
  return origin == MixtureOrigin::AlphaWolf ? "alpha-wolf" : "alpha-mammal";
}

std::set<std::string> MixtureRecord::seed_identities() const {
  std::set<std::string> ids;
  for (const SeedRef& s : seeds) ids.insert(s.identity_id);
  return ids;
}

IrisTemplate remix(const MixtureRecord& record, const Population& source) {
  std::vector<const IrisTemplate*> members;
  for (const SeedRef& s : record.seeds) {
    const auto pos = source.find_sample(s.sample_id);
    if (!pos) throw InvalidArgument("seed '" + s.sample_id + "' not found in population");
    members.push_back(&source[*pos]);
  }
  return mix_members(record.op, members, record.mask_policy);
}

void SearchConfig::validate() const {
  if (operators.empty()) throw InvalidArgument("search needs at least one operator");
  if (max_iterations == 0) throw InvalidArgument("search needs max_iterations >= 1");
  if (density_filter) {
    const auto& f = *density_filter;
    if (!(f.lo >= 0.0 && f.hi <= 1.0 && f.lo < f.hi)) {
      throw InvalidArgument("density filter needs 0 <= lo < hi <= 1");
    }
  }
}

std::vector<MixtureRecord> enumerate_alpha_wolves(std::span<const WolfRecord> wolves,
                                                  std::span<const std::size_t> k_values,
                                                  std::span<const MixOp> operators,
                                                  MaskPolicy mask_policy) {
  std::vector<std::size_t> ks(k_values.begin(), k_values.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<MixOp> ops(operators.begin(), operators.end());
  std::sort(ops.begin(), ops.end());
  ops.erase(std::unique(ops.begin(), ops.end()), ops.end());

  if (ks.empty() || ops.empty()) {
    throw InvalidArgument("enumeration needs at least one k and one operator");
  }
  for (std::size_t k : ks) {
    if (k < 2 || k > 4) {
      throw InvalidArgument("mixing arity k=" + std::to_string(k) + " outside {2, 3, 4}");
    }
  }
  if (wolves.size() < ks.back()) {
    throw InvalidArgument("k=" + std::to_string(ks.back()) + " needs at least that many wolves, got " +
                          std::to_string(wolves.size()));
  }

  std::vector<MixtureRecord> out;
  const std::size_t n = wolves.size();
  for (std::size_t k : ks) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    do {
      std::vector<const IrisTemplate*> members;
      std::vector<SeedRef> seeds;
      for (std::size_t i : idx) {
        members.push_back(&wolves[i].sample);
        seeds.push_back({wolves[i].sample.identity_id(), wolves[i].sample.sample_id()});
      }
      for (MixOp op : ops) {
        MixtureRecord rec;
        rec.mixture = mix_members(op, members, mask_policy);
        rec.op = op;
        rec.mask_policy = mask_policy;
        rec.seeds = seeds;
        rec.k = k;
        rec.origin = MixtureOrigin::AlphaWolf;
        rec.enumeration_index = out.size();
        out.push_back(std::move(rec));
      }
    } while (next_combination(idx, n));
  }
  return out;
}

std::vector<CoverageReport> evaluate_mixtures(std::span<const MixtureRecord> mixtures,
                                              const Population& test, double tau,
                                              std::size_t shift_range, double fmr_label) {
  std::vector<CoverageReport> reports(mixtures.size());
  parallel_for(mixtures.size(), [&](std::size_t i) {
    reports[i] = coverage(mixtures[i].mixture, test, tau, mixtures[i].seed_identities(),
                          shift_range, fmr_label);
  });
  return reports;
}

BestMixture best_alpha_wolf(std::span<const MixtureRecord> mixtures, const Population& test,
                            double tau, const std::optional<DensityFilter>& density_filter,
                            std::size_t shift_range, double fmr_label) {
  std::vector<std::size_t> kept;
  std::vector<MixtureRecord> survivors;
  for (std::size_t i = 0; i < mixtures.size(); ++i) {
    if (density_filter && density_filter->rejects(mixtures[i].mixture)) continue;
    kept.push_back(i);
    survivors.push_back(mixtures[i]);
  }
  if (kept.empty()) {
    throw InvalidArgument("no alpha-wolf candidate left after density filtering");
  }
  const auto reports = evaluate_mixtures(survivors, test, tau, shift_range, fmr_label);

  std::size_t best = 0;
  for (std::size_t j = 1; j < survivors.size(); ++j) {
    const auto& r = reports[j];
    const auto& b = reports[best];
    if (r.identity_matches > b.identity_matches ||
        (r.identity_matches == b.identity_matches &&
         survivors[j].enumeration_index < survivors[best].enumeration_index)) {
      best = j;
    }
  }
  return {kept[best], survivors[best], reports[best]};
}

}  // namespace alphamix
