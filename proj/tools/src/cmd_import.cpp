#include <cctype>
#include <ostream>
#include <set>

#include "alphamix/cli/cli.hpp"
#include "alphamix/error.hpp"
#include "alphamix/template_io.hpp"
#include "commands.hpp"
#include "run_context.hpp"

namespace alphamix::cli {
namespace {

std::string file_stem_for(const std::string& sample_id) {
  std::string s = sample_id;
  for (char& c : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    if (!ok) c = '_';
  }
  return s;
}

}  // namespace

int cmd_import(const ImportOptions& o, std::ostream& out) {
  AdmissibilityPolicy policy{o.min_code_density, o.max_code_density, o.min_mask_fraction};
  policy.validate();
  const auto entries = read_manifest(o.manifest);
  if (entries.empty()) throw InvalidArgument("'" + o.manifest.string() + "' lists no templates");

  std::vector<IrisTemplate> kept;
  std::vector<std::string> stems;
  std::set<std::string> used;
  Report report("import");
  std::string rejection_log = "# identity\tsample\tpath\treason\n";
  std::size_t rejected = 0;
  for (const ManifestEntry& e : entries) {
    IrisTemplate t = import_text_template(e.path, e.mask_path, e.sample_id, e.identity_id);
    if (!o.no_admissibility) {
      if (auto reason = policy.check(t)) {
        ++rejected;
        rejection_log += e.identity_id + "\t" + e.sample_id + "\t" + e.path.filename().string() +
                         "\t" + *reason + "\n";
        report.add({{"record", "rejection"}, {"identity", e.identity_id}, {"sample", e.sample_id},
                    {"file", e.path.filename().string()}, {"reason", *reason}});
        continue;
      }
    }
    const std::string stem = file_stem_for(e.sample_id);
    if (!used.insert(stem).second) {
      throw InvalidArgument("sample ids collide on file name '" + stem + "'");
    }
    kept.push_back(std::move(t));
    stems.push_back(stem);
  }
  // Shape and duplicate-id checks before anything is written.
  const Population population(kept);

  json params = {{"admissibility", !o.no_admissibility},
                 {"min_code_density", o.min_code_density},
                 {"max_code_density", o.max_code_density},
                 {"min_mask_fraction", o.min_mask_fraction}};
  report.set_params(params);
  report.add_input("templates", population_digest(population));
  for (const IrisTemplate& t : population) {
    report.add({{"record", "template"}, {"identity", t.identity_id()}, {"sample", t.sample_id()},
                {"code_density", t.code().density()}, {"mask_density", t.mask().density()}});
  }
  report.summary() << "imported " << population.size() << " templates ("
                   << population.identity_count() << " identities), rejected " << rejected
                   << "\n";

  OutputDir dir(o.out);
  if (!population.empty()) write_population(dir, population.samples(), stems);
  dir.write_text("rejections.tsv", rejection_log);
  report.write(dir);
  out << "imported " << population.size() << ", rejected " << rejected << " -> "
      << o.out.string() << "\n";
  return population.empty() ? kDegenerate : kSuccess;
}

}  // namespace alphamix::cli
