#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "alphamix/iris_template.hpp"
#include "alphamix/population.hpp"

namespace alphamix {

// AIRC binary template file:
//   bytes 0-3   magic "AIRC"
//   byte  4     format version (kAircVersion)
//   bytes 5-6   rows, uint16 big-endian
//   bytes 7-8   cols, uint16 big-endian
//   then rows * ceil(cols/8) code bytes, then the same number of mask bytes,
//   row-major, MSB first, each row zero-padded to a whole byte.
inline constexpr char kAircMagic[4] = {'A', 'I', 'R', 'C'};
inline constexpr std::uint8_t kAircVersion = 1;
inline constexpr std::size_t kAircHeaderSize = 9;

std::vector<std::uint8_t> encode_airc(const IrisTemplate& t);

/// Throws FormatError (bad magic, bad shape, truncated) or a version error
/// (FormatError mentioning the version). `source` names the input in messages.
IrisTemplate decode_airc(std::span<const std::uint8_t> bytes, const std::string& source,
                         std::string sample_id = {}, std::string identity_id = {});

/// Throws IoError when the file cannot be written.
void save_template(const IrisTemplate& t, const std::filesystem::path& path);

/// Ids default to the file stem and an empty identity.
IrisTemplate read_template(const std::filesystem::path& path,
                           std::optional<std::string> sample_id = std::nullopt,
                           std::string identity_id = {});

/// Text matrix: one row per line of '0'/'1' characters. Blank lines and a
/// trailing carriage return are ignored. All rows must have equal length.
BitGrid parse_text_matrix(const std::string& text, const std::string& source);
BitGrid read_text_matrix(const std::filesystem::path& path);
std::string format_text_matrix(const BitGrid& grid);

/// Code from a text matrix plus an optional mask text matrix (full mask if
/// absent).
IrisTemplate import_text_template(const std::filesystem::path& code_path,
                                  const std::optional<std::filesystem::path>& mask_path,
                                  std::string sample_id, std::string identity_id);

/// One manifest line: identity, sample and template path separated by tabs
/// (or runs of whitespace). '#' starts a comment line. Relative paths are
/// resolved against the manifest's directory.
struct ManifestEntry {
  std::string identity_id;
  std::string sample_id;
  std::filesystem::path path;
  std::optional<std::filesystem::path> mask_path;  // text imports only
};

/// Parses a manifest. Throws IoError when unreadable and FormatError on a
/// line with fewer than three fields.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path);

/// Writes "identity<TAB>sample<TAB>path" lines with a header comment.
void write_manifest(const std::filesystem::path& manifest_path,
                    const std::vector<ManifestEntry>& entries);

/// Automated stand-in for discarding unusable templates by eye.
struct AdmissibilityPolicy {
  double min_code_density = 0.02;
  double max_code_density = 0.98;
  double min_mask_valid_fraction = 0.05;

  /// Throws InvalidArgument if a bound is outside [0, 1] or min > max.
  void validate() const;

  /// Empty when admissible, otherwise the reason.
  std::optional<std::string> check(const IrisTemplate& t) const;
};

struct Rejection {
  std::string identity_id;
  std::string sample_id;
  std::string source;
  std::string reason;
};

struct LoadResult {
  Population population;
  std::vector<Rejection> rejections;
};

/// Loads every AIRC file listed in the manifest, in manifest order. When a
/// policy is given, inadmissible templates are dropped and reported.
///
/// Throws IoError for missing files, FormatError for malformed files
/// (message names the file), DimensionError for inconsistent shapes and
/// InvalidArgument for duplicate sample ids.
LoadResult load_population(const std::filesystem::path& manifest_path,
                           const std::optional<AdmissibilityPolicy>& policy = std::nullopt);

}  // namespace alphamix
