#pragma once

// Dense matrices over an exact field (Rational or RatFunc) and Gaussian
// elimination. Entries are values; elimination never mutates its input.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lvk/errors.hpp"
#include "lvk/ratfunc.hpp"
#include "lvk/rational.hpp"

namespace lvk {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::vector<std::vector<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.front().size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto& r : rows) {
      if (r.size() != cols_) throw InvalidArgument("ragged matrix rows");
      for (auto& v : r) data_.push_back(std::move(v));
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<long>(r * cols_),
                          data_.begin() + static_cast<long>((r + 1) * cols_));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using RatFuncMatrix = Matrix<RatFunc>;

template <class T>
struct EchelonForm {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
  /// Original row index that supplied each pivot.
  std::vector<std::size_t> pivot_rows;
};

/// Reduced row echelon form; pivots chosen as the first nonzero entry in
/// each column scanning rows top to bottom.
template <class T>
EchelonForm<T> row_reduce(Matrix<T> m) {
  EchelonForm<T> out;
  std::vector<std::size_t> origin(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) origin[r] = r;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != lead) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead, k));
      std::swap(origin[p], origin[lead]);
    }
    T inv = T(m(lead, c));
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (!is_zero(m(lead, k))) m(lead, k) = T(m(lead, k) / inv);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || is_zero(m(r, c))) continue;
      T f = m(r, c);
      for (std::size_t k = 0; k < m.cols(); ++k) {
        if (!is_zero(m(lead, k))) m(r, k) = T(m(r, k) - f * m(lead, k));
      }
    }
    out.pivot_cols.push_back(c);
    out.pivot_rows.push_back(origin[lead]);
    ++lead;
  }
  out.reduced = std::move(m);
  return out;
}

template <class T>
std::size_t matrix_rank(const Matrix<T>& m) {
  return row_reduce(m).pivot_cols.size();
}

/// Determinant by fraction-field elimination; `one` fixes the field's unit.
template <class T>
T determinant(Matrix<T> m, const T& one) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of non-square matrix");
  T det = one;
  std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return T(one - one);
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      det = T(-det);
    }
    det = T(det * m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      T f = T(m(r, c) / m(c, c));
      for (std::size_t k = c; k < n; ++k) {
        if (!is_zero(m(c, k))) m(r, k) = T(m(r, k) - f * m(c, k));
      }
    }
  }
  return det;
}

struct LinearSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
};

/// Solves M v = rhs exactly. Returns nullopt when inconsistent. The
/// particular solution sets every free variable to zero.
std::optional<LinearSolution> solve_linear(const QMatrix& m,
                                           const std::vector<Rational>& rhs);

/// Rank over the rational-function field.
std::size_t rank_over_field(const RatFuncMatrix& m);

}  // namespace lvk
