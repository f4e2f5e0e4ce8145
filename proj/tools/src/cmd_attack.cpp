#include <algorithm>
#include <cstdio>
#include <ostream>

#include "alphamix/analysis.hpp"
#include "alphamix/attacks.hpp"
#include "alphamix/calibration.hpp"
#include "alphamix/cli/cli.hpp"
#include "alphamix/parallel.hpp"
#include "alphamix/template_io.hpp"
#include "commands.hpp"
#include "run_context.hpp"
#include "shared.hpp"

namespace alphamix::cli {
namespace {

struct Evaluation {
  // coverage[f][m]: mixture m at FMR index f; `side` tells which threshold.
  std::vector<std::vector<CoverageReport>> coverage;
  ThresholdSource side = ThresholdSource::AttackSide;
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string seeds_of(const MixtureRecord& r) {
  std::string s;
  for (const SeedRef& seed : r.seeds) s += (s.empty() ? "" : ",") + seed.sample_id;
  return s;
}

double mean_ncd_to_seeds(const MixtureRecord& r, const Population& source) {
  double total = 0.0;
  for (const SeedRef& s : r.seeds) total += ncd(source[*source.find_sample(s.sample_id)].code(), r.mixture.code());
  return total / static_cast<double>(r.seeds.size());
}

std::string side_name(ThresholdSource s) {
  return s == ThresholdSource::AttackSide ? "tau-attack" : "tau-target";
}

}  // namespace

int cmd_attack(const AttackOptions& o, std::ostream& out) {
  const bool cross = o.mode == "cross";
  if (cross && o.target.empty()) throw InvalidArgument("cross mode needs --target");
  if (!cross && !o.target.empty()) throw InvalidArgument("--target is only used in cross mode");
  if (o.fmr.empty()) throw InvalidArgument("--fmr needs at least one value");

  std::vector<MixOp> ops;
  for (const std::string& name : o.ops) {
    const MixOp op = *parse_mix_op(name);
    if (std::find(ops.begin(), ops.end(), op) == ops.end()) ops.push_back(op);
  }
  const MaskPolicy policy = *parse_mask_policy(o.mask_policy);
  std::optional<DensityFilter> filter;
  if (o.density_filter) filter = DensityFilter{o.density_lo, o.density_hi};

  Report report("attack", o.mode);
  report.set_seed(o.seed);
  json params = {{"fmr", o.fmr}, {"select_fmr", o.select_fmr}, {"shift_range", o.shift_range},
                 {"ops", o.ops}, {"mask_policy", o.mask_policy},
                 {"density_filter", o.density_filter}, {"density_lo", o.density_lo},
                 {"density_hi", o.density_hi}, {"split", o.split.mode},
                 {"train_fraction", o.split.train_fraction},
                 {"admissibility", !o.no_admissibility}};
  if (o.mode == "alphamammal") {
    params["max_iterations"] = o.max_iterations;
    params["lateral_budget"] = o.lateral_budget;
    params["lateral_cutoff"] = o.lateral_cutoff;
  } else {
    params["k"] = o.k;
    params["min_matches"] = o.min_matches;
    params["max_per_identity"] = o.max_per_identity;
    params["max_wolves"] = o.max_wolves;
  }
  report.set_params(params);

  const std::size_t R = o.shift_range;
  const Population p = load_for_report(o.population, !o.no_admissibility, "population", report);
  Population target;
  if (cross) {
    target = load_for_report(o.target, !o.no_admissibility, "target", report);
    if (target.rows() != p.rows() || target.cols() != p.cols()) {
      throw DimensionError("target templates are " + std::to_string(target.rows()) + "x" +
                           std::to_string(target.cols()) + ", attack side " +
                           std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
    }
  }
  const PopulationSplit parts = split(p, split_spec(o.split, o.seed));
  const Population& test = cross ? target : parts.test;

  const ScoreDistribution attack_scores = imposter_scores(p, R);
  std::vector<Threshold> tau_attack, tau_target;
  for (double f : o.fmr) {
    tau_attack.push_back(threshold_at_fmr(attack_scores, f));
    report.add(threshold_record(f, tau_attack.back(), cross ? "attack" : ""));
  }
  if (cross) {
    const ScoreDistribution target_scores = imposter_scores(target, R);
    for (double f : o.fmr) {
      tau_target.push_back(threshold_at_fmr(target_scores, f));
      report.add(threshold_record(f, tau_target.back(), "target"));
    }
  }
  const Threshold select = threshold_at_fmr(attack_scores, o.select_fmr);
  report.summary() << "attack side: " << p.size() << " samples, train " << parts.train.size()
                   << ", evaluated on " << test.size() << (cross ? " target" : "")
                   << " samples\nselection tau " << fixed(select.tau, 10) << " @ FMR "
                   << fmr_label(o.select_fmr) << "\n";

  OutputDir dir(o.out);
  std::vector<MixtureRecord> mixtures;
  if (o.mode == "alphamammal") {
    SearchConfig cfg;
    cfg.operators = ops;
    cfg.max_iterations = o.max_iterations;
    cfg.lateral_move_budget = o.lateral_budget;
    cfg.lateral_cutoff_size = o.lateral_cutoff;
    cfg.density_filter = filter;
    cfg.validate();
    for (MixOp op : ops) {
      MixtureRecord r = hill_climb(parts.train, select.tau, op, cfg, policy, R);
      r.enumeration_index = mixtures.size();
      for (const SearchStep& s : r.trace) {
        report.add({{"record", "search_step"}, {"op", to_string(op)}, {"iteration", s.iteration},
                    {"action", s.action == StepAction::Append ? "append" : "remove"},
                    {"sample", s.sample_id}, {"members", s.members}, {"coverage", s.coverage},
                    {"lateral", s.lateral}});
      }
      mixtures.push_back(std::move(r));
    }
  } else {
    const auto wolves = select_wolves(parts.train, select.tau,
                                      {o.min_matches, o.max_per_identity, o.max_wolves}, R);
    for (std::size_t i = 0; i < wolves.size(); ++i) report.add(wolf_record(i + 1, wolves[i]));
    report.summary() << wolves.size() << " wolves selected\n";
    const std::size_t max_k = *std::max_element(o.k.begin(), o.k.end());
    if (wolves.size() < max_k) {
      report.write(dir);
      throw Degenerate("found " + std::to_string(wolves.size()) + " wolves, k=" +
                       std::to_string(max_k) + " needs at least that many");
    }
    mixtures = enumerate_alpha_wolves(wolves, o.k, ops, policy);
  }

  // Coverage per FMR (and per threshold side in cross mode).
  std::vector<Evaluation> evals;
  if (cross) {
    const std::vector<ThresholdSource> sides{ThresholdSource::AttackSide, ThresholdSource::TargetSide};
    Evaluation ea{{}, ThresholdSource::AttackSide}, et{{}, ThresholdSource::TargetSide};
    for (std::size_t f = 0; f < o.fmr.size(); ++f) {
      const auto rows = cross_attack(mixtures, target, sides, tau_attack[f].tau, tau_target[f].tau,
                                     R, o.fmr[f]);
      std::vector<CoverageReport> a, t;
      for (const CrossAttackRow& row : rows) {
        (row.source == ThresholdSource::AttackSide ? a : t).push_back(row.coverage);
      }
      ea.coverage.push_back(std::move(a));
      et.coverage.push_back(std::move(t));
    }
    evals.push_back(std::move(ea));
    evals.push_back(std::move(et));
  } else {
    Evaluation e;
    for (std::size_t f = 0; f < o.fmr.size(); ++f) {
      e.coverage.push_back(evaluate_mixtures(mixtures, test, tau_attack[f].tau, R, o.fmr[f]));
    }
    evals.push_back(std::move(e));
  }

  std::vector<double> mean_ncd(mixtures.size());
  parallel_for(mixtures.size(), [&](std::size_t i) { mean_ncd[i] = mean_ncd_to_seeds(mixtures[i], p); });

  // Mixture log and per-mixture records.
  std::string log = "index\torigin\top\tk\tseeds\tdensity";
  for (const Evaluation& e : evals) {
    for (double f : o.fmr) log += "\t" + (cross ? side_name(e.side) + "@" : std::string("cov@")) + fmr_label(f);
  }
  log += "\tmean_ncd\tfiltered\n";
  std::vector<IrisTemplate> mixed;
  std::vector<std::string> stems;
  for (std::size_t m = 0; m < mixtures.size(); ++m) {
    const MixtureRecord& r = mixtures[m];
    const bool filtered = filter && filter->rejects(r.mixture);
    log += std::to_string(m) + "\t" + std::string(to_string(r.origin)) + "\t" +
           std::string(to_string(r.op)) + "\t" + std::to_string(r.k) + "\t" + seeds_of(r) +
           "\t" + fixed(r.mixture.code().density(), 4);
    json cov = json::array();
    for (const Evaluation& e : evals) {
      for (std::size_t f = 0; f < o.fmr.size(); ++f) {
        const CoverageReport& c = e.coverage[f][m];
        log += "\t" + fixed(c.identity_percent(), 4);
        json cell = {{"fmr", o.fmr[f]}, {"identity_matches", c.identity_matches},
                     {"evaluated_identities", c.evaluated_identities},
                     {"sample_matches", c.sample_matches}, {"percent", c.identity_percent()}};
        if (cross) cell["threshold"] = side_name(e.side);
        cov.push_back(cell);
      }
    }
    log += "\t" + fixed(mean_ncd[m], 6) + "\t" + (filtered ? "yes" : "no") + "\n";
    std::vector<std::string> seed_ids;
    for (const SeedRef& s : r.seeds) seed_ids.push_back(s.sample_id);
    report.add({{"record", "mixture"}, {"index", m}, {"origin", to_string(r.origin)},
                {"op", to_string(r.op)}, {"k", r.k}, {"seeds", seed_ids},
                {"density", r.mixture.code().density()},
                {"mask_density", r.mixture.mask().density()}, {"mean_ncd", mean_ncd[m]},
                {"filtered", filtered}, {"coverage", cov}});
    char stem[32];
    std::snprintf(stem, sizeof stem, "m%03zu", m);
    mixed.push_back(r.mixture.relabeled(stem, stem));
    stems.emplace_back(stem);
  }

  // Best mixture per table cell.
  CoverageTable table(o.fmr, ops);
  std::size_t filled = 0;
  for (const Evaluation& e : evals) {
    for (std::size_t f = 0; f < o.fmr.size(); ++f) {
      std::map<std::pair<std::string, MixOp>, std::size_t> best;
      for (std::size_t m = 0; m < mixtures.size(); ++m) {
        const MixtureRecord& r = mixtures[m];
        if (filter && filter->rejects(r.mixture)) continue;
        std::string row = o.mode == "alphamammal" ? "search" : std::to_string(r.k);
        if (cross) row += " " + side_name(e.side);
        const auto key = std::make_pair(row, r.op);
        const auto it = best.find(key);
        if (it == best.end() ||
            e.coverage[f][m].identity_matches > e.coverage[f][it->second].identity_matches) {
          best[key] = m;
        }
      }
      for (const auto& [key, m] : best) {
        const CoverageReport& c = e.coverage[f][m];
        table.set(key.first, f, key.second, c.identity_percent());
        ++filled;
        json cell = {{"record", "cell"}, {"row", key.first}, {"op", to_string(key.second)},
                     {"fmr", o.fmr[f]}, {"tau", c.threshold}, {"mixture", m},
                     {"k", mixtures[m].k}, {"identity_matches", c.identity_matches},
                     {"evaluated_identities", c.evaluated_identities},
                     {"percent", c.identity_percent()}};
        report.add(cell);
      }
    }
  }
  report.summary() << mixtures.size() << " mixtures\n\n"
                   << table.render(o.mode == "alphamammal" ? "" : "k");
  if (o.mode == "alphamammal") {
    report.summary() << "\n";
    for (const MixtureRecord& r : mixtures) {
      report.summary() << lower(to_string(r.op)) << ": k=" << r.k << " seeds " << seeds_of(r)
                       << ", " << r.trace.size() << " moves, training coverage "
                       << r.trace.back().coverage << "\n";
    }
  }

  dir.write_text("mixtures.tsv", log);
  {
    std::filesystem::create_directories(dir / "mixtures");
    std::vector<ManifestEntry> entries;
    for (std::size_t i = 0; i < mixed.size(); ++i) {
      const std::string rel = stems[i] + ".airc";
      save_template(mixed[i], dir / "mixtures" / rel);
      entries.push_back({mixed[i].identity_id(), mixed[i].sample_id(), rel, std::nullopt});
    }
    write_manifest(dir / "mixtures" / "manifest.tsv", entries);
  }
  report.write(dir);
  out << mixtures.size() << " mixtures -> " << o.out.string() << "\n";
  if (filled == 0) throw Degenerate("every mixture was removed by the density filter");
  return kSuccess;
}

}  // namespace alphamix::cli
