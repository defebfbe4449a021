#pragma once

#include <vector>

#include "defo/qmatrix.hpp"

namespace defo {

/// H^i of a finite complex C^{i-1} -> C^i -> C^{i+1} over Q.
///
/// Representatives are the earliest kernel-basis vectors independent of the coboundaries
/// (pivot columns of [coboundaries | cocycles]), so the choice is deterministic.
struct CohomologySpace {
  int degree = 0;
  std::size_t ambient = 0;
  std::vector<QVector> cocycles;
  std::vector<QVector> coboundaries;
  std::vector<QVector> representatives;
  QMatrix projection;  ///< dimension x ambient; sends a cocycle to its class coordinates
  QMatrix d_out;       ///< C^i -> C^{i+1}, kept to check cocycle inputs

  std::size_t dimension() const { return representatives.size(); }

  bool is_cocycle(const QVector& z) const { return d_out.rows() == 0 || defo::is_zero(d_out.apply(z)); }

  QVector class_of(const QVector& z) const {
    if (z.size() != ambient) throw DimensionMismatch("class_of: wrong cochain length");
    if (!is_cocycle(z)) throw PreconditionError("class_of: input is not a cocycle");
    return projection.apply(z);
  }

  QVector representative_of(const QVector& coords) const {
    if (coords.size() != dimension()) throw DimensionMismatch("representative_of: wrong coordinate length");
    QVector v(ambient);
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (sgn(coords[k]) != 0) v = add(std::move(v), scaled(representatives[k], coords[k]));
    return v;
  }
};

/// d_in: C^{i-1} -> C^i and d_out: C^i -> C^{i+1}; empty (0-column / 0-row) matrices stand for zero maps.
inline CohomologySpace compute_cohomology(int degree, std::size_t n, const QMatrix& d_in, const QMatrix& d_out) {
  CohomologySpace h;
  h.degree = degree;
  h.ambient = n;
  h.d_out = d_out;
  if (d_out.rows() > 0 && d_out.cols() != n) throw DimensionMismatch("outgoing differential has wrong width");
  if (d_in.cols() > 0 && d_in.rows() != n) throw DimensionMismatch("incoming differential has wrong height");
  h.cocycles = d_out.rows() > 0 ? kernel_basis(d_out) : kernel_basis(QMatrix(0, n));
  h.coboundaries = d_in.cols() > 0 ? image_basis(d_in) : std::vector<QVector>{};

  std::vector<QVector> cols = h.coboundaries;
  cols.insert(cols.end(), h.cocycles.begin(), h.cocycles.end());
  if (!cols.empty()) {
    auto piv = rref(QMatrix::from_columns(n, cols)).pivots;
    for (auto c : piv)
      if (c >= h.coboundaries.size()) h.representatives.push_back(cols[c]);
  }

  std::vector<QVector> basis = h.coboundaries;
  basis.insert(basis.end(), h.representatives.begin(), h.representatives.end());
  h.projection = QMatrix(h.representatives.size(), n);
  if (!basis.empty()) {
    QMatrix left = left_inverse(QMatrix::from_columns(n, basis));
    for (std::size_t k = 0; k < h.representatives.size(); ++k)
      for (std::size_t j = 0; j < n; ++j) h.projection(k, j) = left(h.coboundaries.size() + k, j);
  }
  return h;
}

/// Matrix of the map induced on cohomology by a cochain map f: C^i -> D^i.
inline QMatrix induced_map(const CohomologySpace& src, const CohomologySpace& tgt, const QMatrix& f) {
  QMatrix m(tgt.dimension(), src.dimension());
  for (std::size_t k = 0; k < src.dimension(); ++k) {
    QVector c = tgt.class_of(f.apply(src.representatives[k]));
    for (std::size_t i = 0; i < c.size(); ++i) m(i, k) = c[i];
  }
  return m;
}

inline bool is_bijective(const QMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace defo
