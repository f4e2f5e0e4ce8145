#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace alphamix {

/// Fixed-shape 2-D bit matrix packed into 64-bit words.
///
/// Layout is row-major; each row starts on a fresh word and column 0 is the
/// most significant bit of the row's first word. Bits past `cols` in the
/// last word of a row are padding and are kept at zero by every operation,
/// so popcounts over whole words are exact.
///
/// The canonical IrisCode shape is 20 x 512 (10,240 bits), but any positive
/// shape is accepted.
class BitGrid {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitGrid() = default;

  /// All-zero grid. Throws InvalidArgument if rows or cols is zero.
  BitGrid(std::size_t rows, std::size_t cols);

  static BitGrid ones(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t bit_count() const noexcept { return rows_ * cols_; }
  std::size_t words_per_row() const noexcept { return words_per_row_; }
  bool empty() const noexcept { return rows_ == 0; }

  bool same_shape(const BitGrid& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool get(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, bool value);

  std::span<const Word> row_words(std::size_t row) const {
    return {words_.data() + row * words_per_row_, words_per_row_};
  }
  std::span<const Word> words() const noexcept { return words_; }

  /// Number of 1 bits.
  std::size_t popcount() const noexcept;

  /// Fraction of 1 bits over rows*cols.
  double density() const noexcept;

  /// Mask with the valid (non-padding) bits of a row's last word set.
  Word last_word_mask() const noexcept { return last_mask_; }

  /// True when every padding bit is zero; used by tests.
  bool padding_is_clear() const noexcept;

  /// Every row circularly shifted by `shift` columns: output column c takes
  /// input column (c - shift) mod cols. Negative shifts rotate the other way.
  BitGrid rotated(long shift) const;

  BitGrid operator~() const;
  BitGrid& operator&=(const BitGrid& rhs);
  BitGrid& operator|=(const BitGrid& rhs);
  BitGrid& operator^=(const BitGrid& rhs);

  friend BitGrid operator&(BitGrid lhs, const BitGrid& rhs) { return lhs &= rhs; }
  friend BitGrid operator|(BitGrid lhs, const BitGrid& rhs) { return lhs |= rhs; }
  friend BitGrid operator^(BitGrid lhs, const BitGrid& rhs) { return lhs ^= rhs; }

  friend bool operator==(const BitGrid&, const BitGrid&) = default;

  /// Row-major packed bytes, MSB first, each row padded to a whole byte
  /// with zero bits. This is the on-disk and compression byte image.
  std::vector<std::uint8_t> to_bytes() const;

  /// Inverse of to_bytes(). Throws FormatError on wrong length or set
  /// padding bits.
  static BitGrid from_bytes(std::size_t rows, std::size_t cols,
                            std::span<const std::uint8_t> bytes);

  static std::size_t bytes_per_row(std::size_t cols) { return (cols + 7) / 8; }

 private:
  void require_same_shape(const BitGrid& rhs, const char* op) const;
  void clear_padding() noexcept;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  Word last_mask_ = 0;
  std::vector<Word> words_;
};

}  // namespace alphamix
