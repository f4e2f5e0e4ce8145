#include "alphamix/attacks.hpp"

#include "alphamix/error.hpp"
#include "alphamix/parallel.hpp"

namespace alphamix {

std::string_view to_string(ThresholdSource source) noexcept {
  return source == ThresholdSource::AttackSide ? "attack-side" : "target-side";
}

std::vector<CrossAttackRow> cross_attack(std::span<const MixtureRecord> mixtures,
                                         const Population& target,
                                         std::span<const ThresholdSource> sources,
                                         double tau_attack, double tau_target,
                                         std::size_t shift_range, double fmr_label) {
  for (const MixtureRecord& m : mixtures) {
    if (!target.empty() &&
        (m.mixture.rows() != target.rows() || m.mixture.cols() != target.cols())) {
      throw DimensionError("mixture '" + m.mixture.sample_id() + "' is " +
                           std::to_string(m.mixture.rows()) + "x" +
                           std::to_string(m.mixture.cols()) + " but the target population is " +
                           std::to_string(target.rows()) + "x" + std::to_string(target.cols()));
    }
  }
  const std::size_t per = sources.size();
  std::vector<CrossAttackRow> rows(mixtures.size() * per);
  parallel_for(rows.size(), [&](std::size_t r) {
    const std::size_t mi = r / per;
    const ThresholdSource src = sources[r % per];
    const double tau = src == ThresholdSource::AttackSide ? tau_attack : tau_target;
    rows[r] = {mi, mixtures[mi].encoding, src,
               coverage(mixtures[mi].mixture, target, tau, mixtures[mi].seed_identities(),
                        shift_range, fmr_label)};
  });
  return rows;
}

}  // namespace alphamix
