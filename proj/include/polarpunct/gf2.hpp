#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "polarpunct/bits.hpp"

namespace polarpunct {

/// Dense matrix over GF(2) with rows packed into 64-bit words.
class Gf2Matrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  static Gf2Matrix identity(std::size_t size);
  /// Small literal matrices, mostly for tests: {{1,0},{1,1}}.
  static Gf2Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value);

  std::span<const Word> row(std::size_t r) const {
    return {data_.data() + r * words_per_row_, words_per_row_};
  }
  std::span<Word> row(std::size_t r) {
    return {data_.data() + r * words_per_row_, words_per_row_};
  }

  Gf2Matrix submatrix(std::span<const std::size_t> row_idx,
                      std::span<const std::size_t> col_idx) const;

  /// Row vector times matrix: v * M.
  BitVector left_multiply(std::span<const std::uint8_t> v) const;

  friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b);
  friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<Word> data_;
};

std::size_t gf2_rank(const Gf2Matrix& m);

/// Throws SingularMatrix if m is not square or not invertible.
Gf2Matrix gf2_inverse(const Gf2Matrix& m);

/// Returns X with X * a = b, i.e. b * a^{-1}.
Gf2Matrix gf2_solve_right(const Gf2Matrix& a, const Gf2Matrix& b);

/// Explicit G_N is only materialised up to this stage count (2^14 x 2^14 bits = 32 MiB).
inline constexpr unsigned kMaxExplicitStages = 14;

/// n-fold Kronecker power of [[1,0],[1,1]], built by repeated block expansion.
Gf2Matrix generator_matrix(unsigned n);

/// Entry (row, col) of G_N without materialising it: one iff col's ones are a
/// subset of row's ones.
constexpr bool generator_entry(std::size_t row, std::size_t col) { return (col & ~row) == 0; }

/// G_N restricted to the given rows and columns, built entry-wise.
Gf2Matrix generator_submatrix(std::span<const std::size_t> row_idx,
                              std::span<const std::size_t> col_idx);

/// x = u G_N by the in-place butterfly.
BitVector polar_encode(std::span<const std::uint8_t> u);
void polar_encode_in_place(std::span<std::uint8_t> bits);

}  // namespace polarpunct
