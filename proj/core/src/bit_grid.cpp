#include "alphamix/bit_grid.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "alphamix/error.hpp"

namespace alphamix {
namespace {

constexpr BitGrid::Word kTopBit = BitGrid::Word{1} << 63;

// 64 bits of a row starting at column `offset`, first column in the MSB.
// Positions past the row's last word read as zero.
BitGrid::Word read64(std::span<const BitGrid::Word> row, std::size_t offset) {
  const std::size_t w = offset / BitGrid::kWordBits;
  const unsigned b = offset % BitGrid::kWordBits;
  if (w >= row.size()) return 0;
  BitGrid::Word out = row[w] << b;
  if (b != 0 && w + 1 < row.size()) out |= row[w + 1] >> (BitGrid::kWordBits - b);
  return out;
}

// Keep only the leading `len` bits (1 <= len <= 64).
BitGrid::Word leading(BitGrid::Word x, std::size_t len) {
  return len >= BitGrid::kWordBits ? x : x & ~(~BitGrid::Word{0} >> len);
}

}  // namespace

BitGrid::BitGrid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw InvalidArgument("BitGrid shape must be positive, got " + std::to_string(rows) +
                          "x" + std::to_string(cols));
  }
  words_per_row_ = (cols + kWordBits - 1) / kWordBits;
  const std::size_t tail = cols % kWordBits;
  last_mask_ = tail == 0 ? ~Word{0} : ~(~Word{0} >> tail);
  words_.assign(rows * words_per_row_, 0);
}

BitGrid BitGrid::ones(std::size_t rows, std::size_t cols) {
  BitGrid g(rows, cols);
  std::fill(g.words_.begin(), g.words_.end(), ~Word{0});
  g.clear_padding();
  return g;
}

bool BitGrid::get(std::size_t row, std::size_t col) const {
  const Word w = words_[row * words_per_row_ + col / kWordBits];
  return (w & (kTopBit >> (col % kWordBits))) != 0;
}

void BitGrid::set(std::size_t row, std::size_t col, bool value) {
  Word& w = words_[row * words_per_row_ + col / kWordBits];
  const Word bit = kTopBit >> (col % kWordBits);
  if (value) {
    w |= bit;
  } else {
    w &= ~bit;
  }
}

std::size_t BitGrid::popcount() const noexcept {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

double BitGrid::density() const noexcept {
  if (bit_count() == 0) return 0.0;
  return static_cast<double>(popcount()) / static_cast<double>(bit_count());
}

bool BitGrid::padding_is_clear() const noexcept {
  for (std::size_t r = 0; r < rows_; ++r) {
    if (words_[(r + 1) * words_per_row_ - 1] & ~last_mask_) return false;
  }
  return true;
}

void BitGrid::clear_padding() noexcept {
  if (last_mask_ == ~Word{0}) return;
  for (std::size_t r = 0; r < rows_; ++r) words_[(r + 1) * words_per_row_ - 1] &= last_mask_;
}

BitGrid BitGrid::rotated(long shift) const {
  if (empty()) return *this;
  const long n = static_cast<long>(cols_);
  const long s = ((shift % n) + n) % n;
  if (s == 0) return *this;

  BitGrid out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto src = row_words(r);
    Word* dst = out.words_.data() + r * words_per_row_;
    for (std::size_t wi = 0; wi < words_per_row_; ++wi) {
      // Destination column 64*wi reads source column (64*wi - s) mod cols;
      // gather 64 consecutive source bits, wrapping at the row end.
      std::size_t pos =
          static_cast<std::size_t>(((static_cast<long>(wi * kWordBits) - s) % n + n) % n);
      std::size_t filled = 0;
      Word acc = 0;
      while (filled < kWordBits) {
        const std::size_t len = std::min(kWordBits - filled, cols_ - pos);
        acc |= leading(read64(src, pos), len) >> filled;
        filled += len;
        pos = (pos + len) % cols_;
      }
      dst[wi] = acc;
    }
  }
  out.clear_padding();
  return out;
}

BitGrid BitGrid::operator~() const {
  BitGrid out = *this;
  for (Word& w : out.words_) w = ~w;
  out.clear_padding();
  return out;
}

void BitGrid::require_same_shape(const BitGrid& rhs, const char* op) const {
  if (!same_shape(rhs)) {
    throw DimensionError(std::string("BitGrid ") + op + ": shape " + std::to_string(rows_) +
                         "x" + std::to_string(cols_) + " vs " + std::to_string(rhs.rows_) +
                         "x" + std::to_string(rhs.cols_));
  }
}

BitGrid& BitGrid::operator&=(const BitGrid& rhs) {
  require_same_shape(rhs, "AND");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= rhs.words_[i];
  return *this;
}

BitGrid& BitGrid::operator|=(const BitGrid& rhs) {
  require_same_shape(rhs, "OR");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= rhs.words_[i];
  return *this;
}

BitGrid& BitGrid::operator^=(const BitGrid& rhs) {
  require_same_shape(rhs, "XOR");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= rhs.words_[i];
  return *this;
}

std::vector<std::uint8_t> BitGrid::to_bytes() const {
  const std::size_t per_row = bytes_per_row(cols_);
  std::vector<std::uint8_t> out(rows_ * per_row, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto row = row_words(r);
    for (std::size_t b = 0; b < per_row; ++b) {
      const Word w = row[b / 8];
      out[r * per_row + b] = static_cast<std::uint8_t>(w >> (56 - 8 * (b % 8)));
    }
  }
  return out;
}

BitGrid BitGrid::from_bytes(std::size_t rows, std::size_t cols,
                            std::span<const std::uint8_t> bytes) {
  BitGrid g(rows, cols);
  const std::size_t per_row = bytes_per_row(cols);
  if (bytes.size() != rows * per_row) {
    throw FormatError("expected " + std::to_string(rows * per_row) + " bytes for a " +
                      std::to_string(rows) + "x" + std::to_string(cols) + " grid, got " +
                      std::to_string(bytes.size()));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    Word* row = g.words_.data() + r * g.words_per_row_;
    for (std::size_t b = 0; b < per_row; ++b) {
      row[b / 8] |= Word{bytes[r * per_row + b]} << (56 - 8 * (b % 8));
    }
  }
  if (!g.padding_is_clear()) throw FormatError("nonzero padding bits in packed grid");
  return g;
}

}  // namespace alphamix
