#include "alphamix/cli/cli.hpp"

#include <iostream>

#include "CLI11.hpp"
#include "alphamix/error.hpp"
#include "alphamix/version.hpp"
#include "commands.hpp"
#include "run_context.hpp"

namespace alphamix::cli {
namespace {

void add_split(CLI::App* sub, SplitOptions& s) {
  sub->add_option("--split", s.mode, "Train/test protocol")
      ->check(CLI::IsMember({"same", "disjoint"}))
      ->capture_default_str();
  sub->add_option("--train-fraction", s.train_fraction,
                  "Identity fraction used for training (disjoint split)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

CLI::Option* add_fmr_list(CLI::App* sub, std::vector<double>& fmr) {
  return sub->add_option("--fmr", fmr, "Target false match rates as fractions (comma separated)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"alphamix: iris template mixing attacks and population analysis", "alphamix"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  app.set_config("--config", "", "Key=value configuration file, one [section] per command");
  app.allow_config_extras(CLI::config_extras_mode::error);

  ImportOptions imp;
  auto* s_import = app.add_subcommand("import", "Convert text-matrix templates to AIRC + manifest");
  s_import->add_option("--manifest", imp.manifest, "identity sample code_path [mask_path] per line")
      ->required()
      ->check(CLI::ExistingFile);
  s_import->add_option("--out", imp.out, "Output directory")->required();
  s_import->add_option("--min-code-density", imp.min_code_density)->capture_default_str();
  s_import->add_option("--max-code-density", imp.max_code_density)->capture_default_str();
  s_import->add_option("--min-mask-fraction", imp.min_mask_fraction)->capture_default_str();
  s_import->add_flag("--no-admissibility", imp.no_admissibility, "Keep every template");

  CalibrateOptions cal;
  auto* s_cal = app.add_subcommand("calibrate", "Imposter score distribution and thresholds per FMR");
  s_cal->add_option("--population", cal.population, "Population manifest")->required()->check(CLI::ExistingFile);
  s_cal->add_option("--out", cal.out, "Output directory")->required();
  add_fmr_list(s_cal, cal.fmr);
  s_cal->add_option("--shift-range", cal.shift_range)->capture_default_str();
  s_cal->add_flag("--no-admissibility", cal.no_admissibility);

  WolvesOptions wol;
  auto* s_wol = app.add_subcommand("wolves", "Select wolf samples at one FMR");
  s_wol->add_option("--population", wol.population, "Population manifest")->required()->check(CLI::ExistingFile);
  s_wol->add_option("--out", wol.out, "Output directory")->required();
  s_wol->add_option("--fmr", wol.fmr)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  s_wol->add_option("--shift-range", wol.shift_range)->capture_default_str();
  s_wol->add_option("--min-matches", wol.min_matches)->capture_default_str();
  s_wol->add_option("--max-per-identity", wol.max_per_identity)->capture_default_str();
  s_wol->add_option("--max-wolves", wol.max_wolves)->capture_default_str();
  s_wol->add_option("--seed", wol.seed)->capture_default_str();
  add_split(s_wol, wol.split);
  s_wol->add_flag("--no-admissibility", wol.no_admissibility);

  AttackOptions att;
  auto* s_att = app.add_subcommand("attack", "Alpha-wolf, alpha-mammal or cross-population attack");
  s_att->add_option("--mode", att.mode)
      ->check(CLI::IsMember({"alphawolf", "alphamammal", "cross"}))
      ->capture_default_str();
  s_att->add_option("--population", att.population, "Attack-side population manifest")
      ->required()
      ->check(CLI::ExistingFile);
  s_att->add_option("--target", att.target, "Attacked population manifest (cross mode)")
      ->check(CLI::ExistingFile);
  s_att->add_option("--out", att.out, "Output directory")->required();
  add_fmr_list(s_att, att.fmr);
  s_att->add_option("--select-fmr", att.select_fmr,
                    "FMR for wolf selection and for the hill-climb reward")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  s_att->add_option("--shift-range", att.shift_range)->capture_default_str();
  s_att->add_option("--ops", att.ops, "Mixing operators")
      ->delimiter(',')
      ->check(CLI::IsMember({"and", "or", "xor"}, CLI::ignore_case))
      ->capture_default_str();
  s_att->add_option("--k", att.k, "Mixture sizes for enumeration")
      ->delimiter(',')
      ->check(CLI::Range(2, 4))
      ->capture_default_str();
  s_att->add_option("--mask-policy", att.mask_policy)
      ->check(CLI::IsMember({"same-operator", "intersection"}))
      ->capture_default_str();
  s_att->add_flag("--density-filter", att.density_filter, "Drop mixtures outside the density band");
  s_att->add_option("--density-lo", att.density_lo)->capture_default_str();
  s_att->add_option("--density-hi", att.density_hi)->capture_default_str();
  s_att->add_option("--min-matches", att.min_matches)->capture_default_str();
  s_att->add_option("--max-per-identity", att.max_per_identity)->capture_default_str();
  s_att->add_option("--max-wolves", att.max_wolves)->capture_default_str();
  s_att->add_option("--max-iterations", att.max_iterations)->capture_default_str();
  s_att->add_option("--lateral-budget", att.lateral_budget)->capture_default_str();
  s_att->add_option("--lateral-cutoff", att.lateral_cutoff)->capture_default_str();
  s_att->add_option("--seed", att.seed)->capture_default_str();
  add_split(s_att, att.split);
  s_att->add_flag("--no-admissibility", att.no_admissibility);

  SynthOptions syn;
  auto* s_syn = app.add_subcommand("synth", "Generate HMM codes or a simulated population");
  s_syn->add_option("--mode", syn.mode)->check(CLI::IsMember({"hmm", "population"}))->capture_default_str();
  s_syn->add_option("--out", syn.out, "Output directory")->required();
  s_syn->add_option("--seed", syn.seed)->capture_default_str();
  s_syn->add_option("--count", syn.count, "Number of HMM codes")->capture_default_str();
  s_syn->add_option("--alpha", syn.alpha, "Probability a bit repeats its left neighbour")->capture_default_str();
  s_syn->add_option("--rows", syn.rows)->capture_default_str();
  s_syn->add_option("--cols", syn.cols)->capture_default_str();
  s_syn->add_option("--identities", syn.identities)->capture_default_str();
  s_syn->add_option("--samples", syn.samples, "Samples per identity")->capture_default_str();
  s_syn->add_option("--flip-rate", syn.flip_rate)->capture_default_str();
  s_syn->add_option("--wolves", syn.wolves, "Injected wolf identities")->capture_default_str();
  s_syn->add_option("--arity", syn.arity, "Prototypes voted into each wolf")->capture_default_str();
  s_syn->add_option("--mask-density", syn.mask_density)->capture_default_str();

  AnalyzeOptions ana;
  auto* s_ana = app.add_subcommand("analyze", "NCD, bit statistics and bit-frequency maps");
  s_ana->add_option("--population", ana.population, "Templates to analyze")->required()->check(CLI::ExistingFile);
  s_ana->add_option("--reference", ana.reference, "Compare each template against these")
      ->check(CLI::ExistingFile);
  s_ana->add_option("--out", ana.out, "Output directory")->required();
  s_ana->add_flag("--include-masks", ana.include_masks, "Append mask bytes before compressing");
  s_ana->add_flag("--no-admissibility", ana.no_admissibility);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "alphamix: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (s_import->parsed()) return cmd_import(imp, out);
    if (s_cal->parsed()) return cmd_calibrate(cal, out);
    if (s_wol->parsed()) return cmd_wolves(wol, out);
    if (s_att->parsed()) return cmd_attack(att, out);
    if (s_syn->parsed()) return cmd_synth(syn, out);
    if (s_ana->parsed()) return cmd_analyze(ana, out);
  } catch (const Degenerate& e) {
    err << "alphamix: " << e.what() << "\n";
    return kDegenerate;
  } catch (const Error& e) {
    err << "alphamix: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "alphamix: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace alphamix::cli
