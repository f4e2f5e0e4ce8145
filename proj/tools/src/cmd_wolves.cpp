#include <ostream>

#include "alphamix/calibration.hpp"
#include "alphamix/cli/cli.hpp"
#include "alphamix/error.hpp"
#include "alphamix/menagerie.hpp"
#include "commands.hpp"
#include "run_context.hpp"
#include "shared.hpp"

namespace alphamix::cli {

int cmd_wolves(const WolvesOptions& o, std::ostream& out) {
  Report report("wolves");
  report.set_seed(o.seed);
  report.set_params({{"fmr", o.fmr}, {"shift_range", o.shift_range},
                     {"min_matches", o.min_matches}, {"max_per_identity", o.max_per_identity},
                     {"max_wolves", o.max_wolves}, {"split", o.split.mode},
                     {"train_fraction", o.split.train_fraction},
                     {"admissibility", !o.no_admissibility}});
  const Population p = load_for_report(o.population, !o.no_admissibility, "population", report);
  const PopulationSplit parts = split(p, split_spec(o.split, o.seed));
  const Threshold t = threshold_at_fmr(imposter_scores(p, o.shift_range), o.fmr);
  const auto wolves = select_wolves(parts.train, t.tau,
                                    {o.min_matches, o.max_per_identity, o.max_wolves},
                                    o.shift_range);

  report.add(threshold_record(o.fmr, t));
  for (std::size_t i = 0; i < wolves.size(); ++i) report.add(wolf_record(i + 1, wolves[i]));
  report.summary() << "tau " << fixed(t.tau, 10) << " @ FMR " << fmr_label(o.fmr) << ", "
                   << parts.train.size() << " training samples\n\n";
  std::ostringstream table;
  write_wolves(table, wolves);
  report.summary() << table.str();

  OutputDir dir(o.out);
  dir.write_text("wolves.tsv", table.str());
  report.write(dir);
  out << wolves.size() << " wolves -> " << o.out.string() << "\n";
  if (wolves.empty()) {
    throw Degenerate("no sample falsely matches " + std::to_string(o.min_matches) +
                     " foreign samples at FMR " + fmr_label(o.fmr));
  }
  return kSuccess;
}

}  // namespace alphamix::cli
