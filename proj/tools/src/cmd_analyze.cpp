#include <ostream>

#include "alphamix/analysis.hpp"
#include "alphamix/cli/cli.hpp"
#include "alphamix/parallel.hpp"
#include "commands.hpp"
#include "run_context.hpp"

namespace alphamix::cli {

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  Report report("analyze");
  report.set_params({{"include_masks", o.include_masks}, {"reference", !o.reference.empty()},
                     {"admissibility", !o.no_admissibility}});
  const Population p = load_for_report(o.population, !o.no_admissibility, "population", report);
  Population ref;
  if (!o.reference.empty()) ref = load_for_report(o.reference, !o.no_admissibility, "reference", report);

  const BitStats stats = bit_stats(p.samples());
  report.add({{"record", "bit_stats"}, {"code_mean", stats.code_mean},
              {"code_std", stats.code_std}, {"mask_mean", stats.mask_mean},
              {"mask_std", stats.mask_std}, {"templates", p.size()}});
  const FrequencyMap freq = frequency_map(p.samples());

  // Against the reference set when given, otherwise every unordered pair.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (ref.empty()) {
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) pairs.emplace_back(i, j);
  } else {
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < ref.size(); ++j) pairs.emplace_back(i, j);
  }
  const Population& other = ref.empty() ? p : ref;
  std::vector<double> d(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    d[i] = ncd(p[pairs[i].first], other[pairs[i].second], o.include_masks);
  });

  std::string tsv = "a\tb\tncd\n";
  double sum = 0.0, lo = 1.1, hi = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    tsv += p[pairs[i].first].sample_id() + "\t" + other[pairs[i].second].sample_id() + "\t" +
           fixed(d[i], 6) + "\n";
    sum += d[i];
    lo = std::min(lo, d[i]);
    hi = std::max(hi, d[i]);
  }
  const double mean = pairs.empty() ? 0.0 : sum / static_cast<double>(pairs.size());
  report.add({{"record", "ncd"}, {"pairs", pairs.size()}, {"mean", mean},
              {"min", pairs.empty() ? 0.0 : lo}, {"max", pairs.empty() ? 0.0 : hi},
              {"include_masks", o.include_masks}});

  report.summary() << p.size() << " templates of " << p.rows() << "x" << p.cols() << "\n"
                   << "code density  " << fixed(stats.code_mean, 4) << " +/- "
                   << fixed(stats.code_std, 4) << "\n"
                   << "mask density  " << fixed(stats.mask_mean, 4) << " +/- "
                   << fixed(stats.mask_std, 4) << "\n"
                   << "NCD over " << pairs.size() << (ref.empty() ? " pairs" : " reference pairs")
                   << ": mean " << fixed(mean, 4) << ", min "
                   << fixed(pairs.empty() ? 0.0 : lo, 4) << ", max "
                   << fixed(pairs.empty() ? 0.0 : hi, 4) << "\n";

  OutputDir dir(o.out);
  std::ostringstream matrix, pgm;
  write_matrix(matrix, freq);
  write_pgm(pgm, freq);
  dir.write_text("frequency.txt", matrix.str());
  dir.write_text("frequency.pgm", pgm.str());
  dir.write_text("ncd.tsv", tsv);
  report.write(dir);
  out << "analyzed " << p.size() << " templates -> " << o.out.string() << "\n";
  return kSuccess;
}

}  // namespace alphamix::cli
