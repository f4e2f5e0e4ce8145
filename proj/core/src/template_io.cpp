#include "alphamix/template_io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "alphamix/error.hpp"
#include "alphamix/parallel.hpp"

namespace alphamix {
namespace {

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string slurp_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put_u16(std::vector<std::uint8_t>& out, std::size_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::size_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::size_t{b[at]} << 8) | b[at + 1];
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

std::vector<std::uint8_t> encode_airc(const IrisTemplate& t) {
  if (t.rows() > 0xffff || t.cols() > 0xffff) {
    throw InvalidArgument("template shape exceeds the 16-bit AIRC header");
  }
  std::vector<std::uint8_t> out(std::begin(kAircMagic), std::end(kAircMagic));
  out.push_back(kAircVersion);
  put_u16(out, t.rows());
  put_u16(out, t.cols());
  const auto code = t.code().to_bytes();
  const auto mask = t.mask().to_bytes();
  out.insert(out.end(), code.begin(), code.end());
  out.insert(out.end(), mask.begin(), mask.end());
  return out;
}

IrisTemplate decode_airc(std::span<const std::uint8_t> bytes, const std::string& source,
                         std::string sample_id, std::string identity_id) {
  if (bytes.size() < kAircHeaderSize ||
      !std::equal(std::begin(kAircMagic), std::end(kAircMagic), bytes.begin())) {
    throw FormatError("'" + source + "': bad magic, not an AIRC template");
  }
  if (bytes[4] != kAircVersion) {
    throw FormatError("'" + source + "': unsupported AIRC version " +
                      std::to_string(bytes[4]) + " (expected " +
                      std::to_string(kAircVersion) + ")");
  }
  const std::size_t rows = get_u16(bytes, 5);
  const std::size_t cols = get_u16(bytes, 7);
  if (rows == 0 || cols == 0) {
    throw FormatError("'" + source + "': zero-sized shape " + std::to_string(rows) + "x" +
                      std::to_string(cols));
  }
  const std::size_t plane = rows * BitGrid::bytes_per_row(cols);
  if (bytes.size() != kAircHeaderSize + 2 * plane) {
    throw FormatError("'" + source + "': expected " +
                      std::to_string(kAircHeaderSize + 2 * plane) + " bytes, found " +
                      std::to_string(bytes.size()));
  }
  try {
    BitGrid code = BitGrid::from_bytes(rows, cols, bytes.subspan(kAircHeaderSize, plane));
    BitGrid mask = BitGrid::from_bytes(rows, cols, bytes.subspan(kAircHeaderSize + plane, plane));
    return IrisTemplate(std::move(code), std::move(mask), std::move(sample_id),
                        std::move(identity_id));
  } catch (const FormatError& e) {
    throw FormatError("'" + source + "': " + e.what());
  }
}

void save_template(const IrisTemplate& t, const std::filesystem::path& path) {
  const auto bytes = encode_airc(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

IrisTemplate read_template(const std::filesystem::path& path,
                           std::optional<std::string> sample_id, std::string identity_id) {
  const auto bytes = slurp(path);
  return decode_airc(bytes, path.string(), sample_id.value_or(path.stem().string()),
                     std::move(identity_id));
}

BitGrid parse_text_matrix(const std::string& text, const std::string& source) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw FormatError("'" + source + "': empty text matrix");
  const std::size_t cols = lines.front().size();
  BitGrid grid(lines.size(), cols);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (lines[r].size() != cols) {
      throw FormatError("'" + source + "': row " + std::to_string(r + 1) + " has " +
                        std::to_string(lines[r].size()) + " columns, expected " +
                        std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const char ch = lines[r][c];
      if (ch != '0' && ch != '1') {
        throw FormatError("'" + source + "': invalid bit character '" + std::string(1, ch) +
                          "' at row " + std::to_string(r + 1) + ", column " +
                          std::to_string(c + 1));
      }
      grid.set(r, c, ch == '1');
    }
  }
  return grid;
}

BitGrid read_text_matrix(const std::filesystem::path& path) {
  return parse_text_matrix(slurp_text(path), path.string());
}

std::string format_text_matrix(const BitGrid& grid) {
  std::string out;
  out.reserve(grid.rows() * (grid.cols() + 1));
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) out.push_back(grid.get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

IrisTemplate import_text_template(const std::filesystem::path& code_path,
                                  const std::optional<std::filesystem::path>& mask_path,
                                  std::string sample_id, std::string identity_id) {
  BitGrid code = read_text_matrix(code_path);
  if (!mask_path) {
    return IrisTemplate::with_full_mask(std::move(code), std::move(sample_id),
                                        std::move(identity_id));
  }
  BitGrid mask = read_text_matrix(*mask_path);
  if (!mask.same_shape(code)) {
    throw FormatError("'" + mask_path->string() + "': mask shape differs from code '" +
                      code_path.string() + "'");
  }
  return IrisTemplate(std::move(code), std::move(mask), std::move(sample_id),
                      std::move(identity_id));
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path) {
  const std::string text = slurp_text(manifest_path);
  const std::filesystem::path base = manifest_path.parent_path();
  std::vector<ManifestEntry> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string tok; fields >> tok;) f.push_back(tok);
    if (f.size() < 3 || f.size() > 4) {
      throw FormatError("'" + manifest_path.string() + "' line " + std::to_string(line_no) +
                        ": expected 'identity sample path [mask_path]'");
    }
    ManifestEntry e{f[0], f[1], resolve(base, f[2]), std::nullopt};
    if (f.size() == 4) e.mask_path = resolve(base, f[3]);
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_manifest(const std::filesystem::path& manifest_path,
                    const std::vector<ManifestEntry>& entries) {
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + manifest_path.string() + "'");
  out << "# identity\tsample\tpath\n";
  for (const ManifestEntry& e : entries) {
    out << e.identity_id << '\t' << e.sample_id << '\t' << e.path.generic_string();
    if (e.mask_path) out << '\t' << e.mask_path->generic_string();
    out << '\n';
  }
  if (!out) throw IoError("short write to '" + manifest_path.string() + "'");
}

void AdmissibilityPolicy::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(min_code_density) || !unit(max_code_density) || !unit(min_mask_valid_fraction)) {
    throw InvalidArgument("admissibility bounds must lie in [0, 1]");
  }
  if (min_code_density > max_code_density) {
    throw InvalidArgument("admissibility: min code density exceeds max");
  }
}

std::optional<std::string> AdmissibilityPolicy::check(const IrisTemplate& t) const {
  const double d = t.code().density();
  if (d < min_code_density) {
    return "code density " + std::to_string(d) + " below " + std::to_string(min_code_density);
  }
  if (d > max_code_density) {
    return "code density " + std::to_string(d) + " above " + std::to_string(max_code_density);
  }
  const double m = t.mask().density();
  if (m < min_mask_valid_fraction) {
    return "mask valid fraction " + std::to_string(m) + " below " +
           std::to_string(min_mask_valid_fraction);
  }
  return std::nullopt;
}

LoadResult load_population(const std::filesystem::path& manifest_path,
                           const std::optional<AdmissibilityPolicy>& policy) {
  if (policy) policy->validate();
  const auto entries = read_manifest(manifest_path);

  std::vector<std::optional<IrisTemplate>> loaded(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    loaded[i] = read_template(e.path, e.sample_id, e.identity_id);
  });

  LoadResult result;
  std::vector<IrisTemplate> kept;
  kept.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (policy) {
      if (auto reason = policy->check(*loaded[i])) {
        result.rejections.push_back({entries[i].identity_id, entries[i].sample_id,
                                     entries[i].path.generic_string(), *reason});
        continue;
      }
    }
    kept.push_back(std::move(*loaded[i]));
  }
  result.population = Population(std::move(kept));
  return result;
}

}  // namespace alphamix
