#include <ostream>

#include "alphamix/calibration.hpp"
#include "alphamix/cli/cli.hpp"
#include "commands.hpp"
#include "run_context.hpp"

namespace alphamix::cli {

int cmd_calibrate(const CalibrateOptions& o, std::ostream& out) {
  Report report("calibrate");
  report.set_params({{"fmr", o.fmr}, {"shift_range", o.shift_range},
                     {"admissibility", !o.no_admissibility}});
  const Population p = load_for_report(o.population, !o.no_admissibility, "population", report);
  const ScoreDistribution d = imposter_scores(p, o.shift_range);

  report.add({{"record", "distribution"}, {"pairs", d.pair_count()}, {"scored", d.size()},
              {"incomparable", d.incomparable_count()},
              {"min", d.empty() ? 0.0 : d.scores().front()},
              {"max", d.empty() ? 0.0 : d.scores().back()}});
  report.summary() << p.size() << " samples, " << p.identity_count() << " identities, "
                   << d.size() << " imposter scores (" << d.incomparable_count()
                   << " incomparable)\n\n";
  report.summary() << "FMR        tau           achieved FMR  budget\n";
  for (double fmr : o.fmr) {
    const Threshold t = threshold_at_fmr(d, fmr);
    report.add({{"record", "threshold"}, {"fmr", fmr}, {"tau", t.tau},
                {"achieved_fmr", t.achieved_fmr}, {"budget", t.budget},
                {"no_match", t.no_match}});
    std::string label = fmr_label(fmr);
    label.resize(10, ' ');
    report.summary() << label << ' ' << fixed(t.tau, 10) << "  " << fixed(t.achieved_fmr, 10)
                     << "  " << t.budget << (t.no_match ? "  (no match possible)" : "") << "\n";
  }

  OutputDir dir(o.out);
  std::ostringstream scores;
  write_scores(scores, d);
  dir.write_text("scores.txt", scores.str());
  report.write(dir);
  out << o.fmr.size() << " thresholds over " << d.size() << " imposter scores -> "
      << o.out.string() << "\n";
  return kSuccess;
}

}  // namespace alphamix::cli
