#include "alphamix/analysis.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "alphamix/error.hpp"

namespace alphamix {
namespace {

constexpr int kLevel = 9;

double ncd_bytes(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  std::vector<std::uint8_t> joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  const auto ca = static_cast<double>(compressed_size(a));
  const auto cb = static_cast<double>(compressed_size(b));
  const auto cab = static_cast<double>(compressed_size(joined));
  const double v = (cab - std::min(ca, cb)) / std::max(ca, cb);
  return std::clamp(v, 0.0, 1.1);
}

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  sd = std::sqrt(sq / static_cast<double>(xs.size()));
}

}  // namespace

std::string compressor_identity() {
  return std::string("zlib-") + zlibVersion() + "/deflate-" + std::to_string(kLevel);
}

std::size_t compressed_size(std::span<const std::uint8_t> bytes) {
  uLongf bound = compressBound(static_cast<uLong>(bytes.size()));
  std::vector<Bytef> out(bound);
  const int rc = compress2(out.data(), &bound, bytes.data(), static_cast<uLong>(bytes.size()),
                           kLevel);
  if (rc != Z_OK) throw Error("zlib compress2 failed with code " + std::to_string(rc));
  return bound;
}

double ncd(const BitGrid& a, const BitGrid& b) { return ncd_bytes(a.to_bytes(), b.to_bytes()); }

double ncd(const IrisTemplate& a, const IrisTemplate& b, bool include_masks) {
  if (!include_masks) return ncd(a.code(), b.code());
  auto bytes = [](const IrisTemplate& t) {
    auto v = t.code().to_bytes();
    const auto m = t.mask().to_bytes();
    v.insert(v.end(), m.begin(), m.end());
    return v;
  };
  return ncd_bytes(bytes(a), bytes(b));
}

BitStats bit_stats(std::span<const IrisTemplate> templates) {
  if (templates.empty()) throw InvalidArgument("bit statistics of an empty template list");
  std::vector<double> code, mask;
  for (const IrisTemplate& t : templates) {
    code.push_back(t.code().density());
    mask.push_back(t.mask().density());
  }
  BitStats s;
  mean_std(code, s.code_mean, s.code_std);
  mean_std(mask, s.mask_mean, s.mask_std);
  return s;
}

FrequencyMap frequency_map(std::span<const IrisTemplate> templates) {
  if (templates.empty()) throw InvalidArgument("frequency map of an empty template list");
  const IrisTemplate& first = templates.front();
  FrequencyMap map(first.rows(), first.cols(), templates.size());
  for (const IrisTemplate& t : templates) {
    if (!t.same_shape(first)) {
      throw DimensionError("frequency map: '" + t.sample_id() + "' differs in shape from '" +
                           first.sample_id() + "'");
    }
    for (std::size_t r = 0; r < t.rows(); ++r) {
      for (std::size_t c = 0; c < t.cols(); ++c) {
        if (t.code().get(r, c)) map.add(r, c);
      }
    }
  }
  return map;
}

void write_matrix(std::ostream& out, const FrequencyMap& map) {
  char buf[32];
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      std::snprintf(buf, sizeof buf, c == 0 ? "%.6f" : " %.6f", map.value(r, c));
      out << buf;
    }
    out << '\n';
  }
}

void write_pgm(std::ostream& out, const FrequencyMap& map) {
  out << "P2\n" << map.cols() << ' ' << map.rows() << "\n255\n";
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      if (c) out << ' ';
      out << std::lround(255.0 * map.value(r, c));
    }
    out << '\n';
  }
}

}  // namespace alphamix
