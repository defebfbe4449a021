#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defo/rational.hpp"

namespace defo {

using QVector = std::vector<Rational>;

inline bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

/// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static QMatrix from_columns(std::size_t rows, const std::vector<QVector>& cols) {
    QMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionMismatch("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  QVector column(std::size_t j) const {
    QVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  QVector row(std::size_t i) const { return QVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

  QVector apply(const QVector& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
    QVector out(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn(v[j]) == 0) continue;
      for (std::size_t i = 0; i < rows_; ++i)
        if (sgn((*this)(i, j)) != 0) out[i] += (*this)(i, j) * v[j];
    }
    return out;
  }

  QMatrix operator*(const QMatrix& b) const {
    if (cols_ != b.rows_) throw DimensionMismatch("matrix product size mismatch");
    QMatrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& x = (*this)(i, k);
        if (sgn(x) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0) c(i, j) += x * b(k, j);
      }
    return c;
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const { return defo::is_zero(a_); }
  bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  QVector a_;
};

struct RrefResult {
  QMatrix reduced;
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row, increasing
};

/// Reduced row echelon form by Gauss-Jordan elimination, scanning columns left to right.
inline RrefResult rref(QMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

/// Basis of the null space: one vector per free column, with that coordinate 1 and other free coordinates 0.
inline std::vector<QVector> kernel_basis(const QMatrix& m) {
  auto [r, piv] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of the column space made of the pivot columns of m itself.
inline std::vector<QVector> image_basis(const QMatrix& m) {
  std::vector<QVector> basis;
  for (auto c : rref(m).pivots) basis.push_back(m.column(c));
  return basis;
}

/// Some x with m x = b (free coordinates set to 0), or nullopt if inconsistent.
inline std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side has wrong length");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto [r, piv] = rref(std::move(aug));
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  QVector x(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r(i, m.cols());
  return x;
}

inline bool in_span(const QVector& v, const std::vector<QVector>& basis) {
  for (const auto& b : basis)
    if (b.size() != v.size()) throw DimensionMismatch("in_span: vector length mismatch");
  if (basis.empty()) return is_zero(v);
  return solve(QMatrix::from_columns(v.size(), basis), v).has_value();
}

/// L with L * m = identity, for m of full column rank.
inline QMatrix left_inverse(const QMatrix& m) {
  const std::size_t n = m.rows(), k = m.cols();
  QMatrix aug(n, k + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = m(i, j);
    aug(i, k + i) = 1;
  }
  auto [r, piv] = rref(std::move(aug));
  if (piv.size() < k || (k > 0 && piv[k - 1] != k - 1))
    throw PreconditionError("left_inverse: matrix does not have full column rank");
  QMatrix out(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = r(i, k + j);
  return out;
}

inline QVector add(QVector a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector add size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline QVector scaled(QVector a, const Rational& s) {
  for (auto& x : a) x *= s;
  return a;
}

/// V / W for W the column span of `sub`. Cosets are represented by the unique vector that
/// vanishes at the pivot coordinates of W's reduced row echelon basis.
class QuotientSpace {
 public:
  QuotientSpace() = default;
  explicit QuotientSpace(const QMatrix& sub) : n_(sub.rows()) {
    auto [r, piv] = rref(sub.transpose());
    pivots_ = piv;
    for (std::size_t i = 0; i < piv.size(); ++i) rows_.push_back(r.row(i));
    std::vector<bool> is_pivot(n_, false);
    for (auto p : piv) is_pivot[p] = true;
    for (std::size_t i = 0; i < n_; ++i)
      if (!is_pivot[i]) free_.push_back(i);
  }

  std::size_t ambient() const { return n_; }
  std::size_t dimension() const { return free_.size(); }
  const std::vector<std::size_t>& free_coordinates() const { return free_; }

  QVector canonical(QVector v) const {
    if (v.size() != n_) throw DimensionMismatch("quotient: vector length mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Rational c = v[pivots_[i]];
      if (sgn(c) == 0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(rows_[i][j]) != 0) v[j] -= c * rows_[i][j];
    }
    return v;
  }
  bool in_subspace(const QVector& v) const { return is_zero(canonical(v)); }
  /// Coordinates of the coset in the basis given by the free coordinates.
  QVector coordinates(const QVector& v) const {
    QVector c = canonical(v), out;
    for (auto i : free_) out.push_back(c[i]);
    return out;
  }
  QVector from_coordinates(const QVector& c) const {
    QVector v(n_);
    for (std::size_t k = 0; k < free_.size(); ++k) v[free_[k]] = c[k];
    return v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> pivots_, free_;
  std::vector<QVector> rows_;
};

}  // namespace defo
