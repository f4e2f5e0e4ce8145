#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "alphamix/bit_grid.hpp"
#include "alphamix/iris_template.hpp"

namespace alphamix {

/// Compressor behind C(.) in the NCD; fixed so results are reproducible.
/// Returns e.g. "zlib-1.2.11/deflate-9".
std::string compressor_identity();

/// Compressed size in bytes of `bytes` under the fixed compressor.
std::size_t compressed_size(std::span<const std::uint8_t> bytes);

/// Normalized compression distance over the packed row-major bytes:
///   (C(ab) - min(C(a), C(b))) / max(C(a), C(b)),
/// with ab the byte concatenation, clamped to [0, 1.1].
double ncd(const BitGrid& a, const BitGrid& b);

/// NCD over code bytes, optionally followed by mask bytes.
double ncd(const IrisTemplate& a, const IrisTemplate& b, bool include_masks = false);

/// Mean and population standard deviation of per-template 1-bit density.
struct BitStats {
  double code_mean = 0.0;
  double code_std = 0.0;
  double mask_mean = 0.0;
  double mask_std = 0.0;
};

/// Throws InvalidArgument for an empty list.
BitStats bit_stats(std::span<const IrisTemplate> templates);

/// Per-cell count of templates with a 1 code bit.
class FrequencyMap {
 public:
  FrequencyMap(std::size_t rows, std::size_t cols, std::size_t total)
      : rows_(rows), cols_(cols), total_(total), counts_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t total() const noexcept { return total_; }
  std::size_t count(std::size_t r, std::size_t c) const { return counts_[r * cols_ + c]; }
  double value(std::size_t r, std::size_t c) const {
    return static_cast<double>(count(r, c)) / static_cast<double>(total_);
  }

  void add(std::size_t r, std::size_t c) { ++counts_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t total_;
  std::vector<std::size_t> counts_;
};

/// Throws InvalidArgument for an empty list, DimensionError on mixed shapes.
FrequencyMap frequency_map(std::span<const IrisTemplate> templates);

/// One row per line, values space-separated with six decimals.
void write_matrix(std::ostream& out, const FrequencyMap& map);

/// ASCII portable graymap (P2), maxval 255, value v -> round(255 * v).
void write_pgm(std::ostream& out, const FrequencyMap& map);

}  // namespace alphamix
