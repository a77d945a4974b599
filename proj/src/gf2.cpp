#include "polarpunct/gf2.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "polarpunct/errors.hpp"

namespace polarpunct {

namespace {

std::size_t words_for(std::size_t cols) {
  return (cols + Gf2Matrix::kWordBits - 1) / Gf2Matrix::kWordBits;
}

void xor_into(std::span<Gf2Matrix::Word> dst, std::span<const Gf2Matrix::Word> src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

// Row-reduces in place; returns the rank. Pivot columns ascend.
std::size_t eliminate(Gf2Matrix& m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      auto a = m.row(pivot);
      auto b = m.row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m.get(r, c)) xor_into(m.row(r), m.row(rank));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for(cols)),
      data_(rows * words_for(cols), 0) {}

Gf2Matrix Gf2Matrix::identity(std::size_t size) {
  Gf2Matrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  Gf2Matrix m(rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw RangeError("ragged matrix literal");
    std::size_t c = 0;
    for (int v : row) m.set(r, c++, (v & 1) != 0);
    ++r;
  }
  return m;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool value) {
  Word& w = data_[r * words_per_row_ + c / kWordBits];
  const Word bit = Word{1} << (c % kWordBits);
  w = value ? (w | bit) : (w & ~bit);
}

Gf2Matrix Gf2Matrix::submatrix(std::span<const std::size_t> row_idx,
                               std::span<const std::size_t> col_idx) const {
  Gf2Matrix out(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r) {
    if (row_idx[r] >= rows_) throw RangeError("submatrix row index out of range");
    for (std::size_t c = 0; c < col_idx.size(); ++c) {
      if (col_idx[c] >= cols_) throw RangeError("submatrix column index out of range");
      if (get(row_idx[r], col_idx[c])) out.set(r, c, true);
    }
  }
  return out;
}

BitVector Gf2Matrix::left_multiply(std::span<const std::uint8_t> v) const {
  if (v.size() != rows_) throw RangeError("vector length does not match matrix rows");
  std::vector<Word> acc(words_per_row_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r] & 1U) xor_into(acc, row(r));
  }
  BitVector out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    out[c] = static_cast<std::uint8_t>((acc[c / kWordBits] >> (c % kWordBits)) & 1U);
  }
  return out;
}

Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.rows()) throw RangeError("matrix dimensions do not agree");
  Gf2Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.get(r, k)) xor_into(out.row(r), b.row(k));
    }
  }
  return out;
}

std::size_t gf2_rank(const Gf2Matrix& m) {
  if (m.empty()) return 0;
  Gf2Matrix work = m;
  return eliminate(work);
}

Gf2Matrix gf2_inverse(const Gf2Matrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrix("matrix is not square");
  const std::size_t n = m.rows();
  // Gauss-Jordan on [m | I].
  Gf2Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (m.get(r, c)) aug.set(r, c, true);
    }
    aug.set(r, n + r, true);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && !aug.get(pivot, c)) ++pivot;
    if (pivot == n) throw SingularMatrix("matrix is singular over GF(2)");
    if (pivot != c) {
      auto a = aug.row(pivot);
      auto b = aug.row(c);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && aug.get(r, c)) xor_into(aug.row(r), aug.row(c));
    }
  }
  Gf2Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (aug.get(r, n + c)) inv.set(r, c, true);
    }
  }
  return inv;
}

Gf2Matrix gf2_solve_right(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.rows() != a.cols()) throw RangeError("left operand must be square");
  if (b.cols() != a.rows()) throw RangeError("right-hand side has wrong column count");
  return b * gf2_inverse(a);
}

Gf2Matrix generator_matrix(unsigned n) {
  if (n > kMaxExplicitStages) {
    throw RangeError("explicit generator matrix limited to n <= " +
                     std::to_string(kMaxExplicitStages));
  }
  Gf2Matrix g = Gf2Matrix::identity(1);
  for (unsigned stage = 0; stage < n; ++stage) {
    // G_2 (x) G = [[G, 0], [G, G]]
    const std::size_t half = g.rows();
    Gf2Matrix next(2 * half, 2 * half);
    for (std::size_t r = 0; r < half; ++r) {
      for (std::size_t c = 0; c < half; ++c) {
        if (!g.get(r, c)) continue;
        next.set(r, c, true);
        next.set(half + r, c, true);
        next.set(half + r, half + c, true);
      }
    }
    g = std::move(next);
  }
  return g;
}

Gf2Matrix generator_submatrix(std::span<const std::size_t> row_idx,
                              std::span<const std::size_t> col_idx) {
  Gf2Matrix out(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r) {
    for (std::size_t c = 0; c < col_idx.size(); ++c) {
      if (generator_entry(row_idx[r], col_idx[c])) out.set(r, c, true);
    }
  }
  return out;
}

void polar_encode_in_place(std::span<std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (!is_power_of_two(n)) {
    throw RangeError("polar_encode: length " + std::to_string(n) + " is not a power of two");
  }
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * half) {
      for (std::size_t j = base; j < base + half; ++j) bits[j] ^= bits[j + half];
    }
  }
}

BitVector polar_encode(std::span<const std::uint8_t> u) {
  BitVector x(u.begin(), u.end());
  polar_encode_in_place(x);
  return x;
}

}  // namespace polarpunct
