#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "support/scalar.hpp"

namespace taucert {

// Dense row-major matrix over an exact field. The `zero` exemplar pins the
// field context (modulus for Fp) even for matrices with no rows.
template <class K>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, K zero)
      : rows_(rows), cols_(cols), zero_(std::move(zero)), a_(rows * cols, zero_) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const K& zero() const { return zero_; }

  K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  K* row(std::size_t i) { return a_.data() + i * cols_; }
  const K* row(std::size_t i) const { return a_.data() + i * cols_; }

  void append_row(const std::vector<K>& r) {
    if (r.size() != cols_) throw std::invalid_argument("matrix: row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }

  static Matrix from_rows(const std::vector<std::vector<K>>& rows, std::size_t cols, K zero) {
    Matrix m(0, cols, std::move(zero));
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

 private:
  std::size_t rows_, cols_;
  K zero_;
  std::vector<K> a_;
};

// In-place row echelon reduction; returns the rank. Works over any exact
// field type (Fp, Rational). Pivot choice is the first nonzero entry;
// exactness, not conditioning, is what matters here.
template <class K>
std::size_t row_echelon(Matrix<K>& m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && scalar_is_zero(m.at(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    const K inv_head = field_one_like(m.zero()) / m.at(rank, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) = m.at(rank, j) * inv_head;
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (scalar_is_zero(m.at(i, col))) continue;
      const K f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

template <class K>
std::size_t matrix_rank(Matrix<K> m) {
  return row_echelon(m);
}

// Reduced row echelon form; fills `pivots` with the pivot column of each of
// the first `rank` rows.
template <class K>
std::size_t reduced_echelon(Matrix<K>& m, std::vector<std::size_t>& pivots) {
  pivots.clear();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && scalar_is_zero(m.at(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    const K inv_head = field_one_like(m.zero()) / m.at(rank, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) = m.at(rank, j) * inv_head;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || scalar_is_zero(m.at(i, col))) continue;
      const K f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
    }
    pivots.push_back(col);
    ++rank;
  }
  return rank;
}

// Basis of the right kernel {x : M x = 0}, one vector per free column.
template <class K>
std::vector<std::vector<K>> kernel_basis(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  const std::size_t rank = reduced_echelon(m, pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<K>> basis;
  basis.reserve(m.cols() - rank);
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<K> v(m.cols(), m.zero());
    v[free_col] = field_one_like(m.zero());
    for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = -m.at(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Fraction-free (Bareiss) rank of an integer matrix: all intermediate
// divisions are exact, so the result is the rank over the rationals.
inline std::size_t bareiss_rank(Matrix<BigInt> m) {
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      for (std::size_t j = col + 1; j < m.cols(); ++j) {
        m.at(i, j) = (m.at(i, j) * m.at(rank, col) - m.at(i, col) * m.at(rank, j)) / prev;
      }
      m.at(i, col) = 0;
    }
    prev = m.at(rank, col);
    ++rank;
  }
  return rank;
}

}  // namespace taucert
