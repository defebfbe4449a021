#pragma once

#include <map>
#include <string>
#include <vector>

#include "defo/dg_lie.hpp"

namespace defo {

/// Ordinary Lie algebra (everything in degree 0) by structure constants on pairs i < j.
struct LieAlgebraSpec {
  std::vector<std::string> names;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> bracket;  // i < j only

  std::vector<std::pair<int, Rational>> br(int i, int j) const {
    if (i == j) return {};
    bool flip = i > j;
    auto it = bracket.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == bracket.end()) return {};
    auto v = it->second;
    if (flip)
      for (auto& [k, c] : v) c = -c;
    return v;
  }
};

/// Finite-dimensional graded-commutative DG algebra with unit at index 0.
struct CDGASpec {
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<std::vector<std::pair<int, Rational>>> d;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> product;  // non-unit pairs i <= j

  std::size_t size() const { return names.size(); }

  std::vector<std::pair<int, Rational>> mul(int i, int j) const {
    if (i == 0) return {{j, Rational(1)}};
    if (j == 0) return {{i, Rational(1)}};
    bool flip = i > j;
    auto it = product.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == product.end()) return {};
    auto v = it->second;
    if (flip && koszul(degrees[i], degrees[j]) < 0)
      for (auto& [k, c] : v) c = -c;
    return v;
  }
};

namespace lie {

inline LieAlgebraSpec abelian(int n) {
  LieAlgebraSpec s;
  for (int i = 0; i < n; ++i) s.names.push_back("k" + std::to_string(i + 1));
  return s;
}

/// [x, y] = z
inline LieAlgebraSpec heisenberg() {
  return {{"x", "y", "z"}, {{{0, 1}, {{2, Rational(1)}}}}};
}

/// [h, e] = 2e, [h, f] = -2f, [e, f] = h
inline LieAlgebraSpec sl2() {
  return {{"h", "e", "f"},
          {{{0, 1}, {{1, Rational(2)}}}, {{0, 2}, {{2, Rational(-2)}}}, {{1, 2}, {{0, Rational(1)}}}}};
}

/// [a, b] = b
inline LieAlgebraSpec affine_line() { return {{"a", "b"}, {{{0, 1}, {{1, Rational(1)}}}}}; }

}  // namespace lie

namespace cdga {

/// The ground field.
inline CDGASpec point() { return {{"1"}, {0}, {{}}, {}}; }

/// Exterior algebra on degree-1 generators e, f: basis 1, e, f, ef.
inline CDGASpec exterior2() {
  return {{"1", "e", "f", "ef"}, {0, 1, 1, 2}, {{}, {}, {}, {}}, {{{1, 2}, {{3, Rational(1)}}}}};
}

/// 1, e (deg 1), f (deg 2) with d e = f and all products of non-units zero.
inline CDGASpec dual_numbers_shifted() {
  return {{"1", "e", "f"}, {0, 1, 2}, {{}, {{2, Rational(1)}}, {}}, {}};
}

/// 1, t (deg 0), dt (deg 1) with d t = dt and t^2 = t dt = 0. Acyclic apart from the unit,
/// so tensoring with it is a quasi-isomorphism.
inline CDGASpec contractible_pair() {
  return {{"1", "t", "dt"}, {0, 0, 1}, {{}, {{2, Rational(1)}}, {}}, {}};
}

/// Quantum-type coefficients: 1, eps (deg -1), e (deg 1), eps.e (deg 0), with d eps = eps.e.
/// Generator names can be changed so that tensor powers have distinct basis names.
inline CDGASpec quantum(const std::string& eps = "eps", const std::string& e = "e") {
  return {{"1", eps, e, eps + "." + e}, {0, -1, 1, 0}, {{}, {{3, Rational(1)}}, {}, {}}, {{{1, 2}, {{3, Rational(1)}}}}};
}

/// Two odd generators in degree -1 and their product in degree -2, plus a degree-1 generator.
inline CDGASpec negative_exterior() {
  return {{"1", "a", "b", "ab", "e"}, {0, -1, -1, -2, 1}, {{}, {}, {}, {}, {}}, {{{1, 2}, {{3, Rational(1)}}}}};
}

/// A (x) B with the Koszul sign on products and d(a b) = da b + (-1)^{|a|} a db.
inline CDGASpec tensor(const CDGASpec& A, const CDGASpec& B) {
  CDGASpec t;
  auto idx = [&](int a, int b) { return a * static_cast<int>(B.size()) + b; };
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < B.size(); ++b) {
      std::string n = a == 0 ? B.names[b] : (b == 0 ? A.names[a] : A.names[a] + "." + B.names[b]);
      t.names.push_back(a == 0 && b == 0 ? "1" : n);
      t.degrees.push_back(A.degrees[a] + B.degrees[b]);
      std::vector<std::pair<int, Rational>> dv;
      for (const auto& [i, c] : A.d[a]) dv.emplace_back(idx(i, b), c);
      for (const auto& [j, c] : B.d[b]) dv.emplace_back(idx(a, j), c * parity_sign(A.degrees[a]));
      t.d.push_back(dv);
    }
  for (std::size_t a1 = 0; a1 < A.size(); ++a1)
    for (std::size_t b1 = 0; b1 < B.size(); ++b1)
      for (std::size_t a2 = 0; a2 < A.size(); ++a2)
        for (std::size_t b2 = 0; b2 < B.size(); ++b2) {
          int i = idx(a1, b1), j = idx(a2, b2);
          if (i == 0 || j == 0 || i > j) continue;
          std::map<int, Rational> acc;
          int sign = koszul(B.degrees[b1], A.degrees[a2]);
          for (const auto& [pa, ca] : A.mul(a1, a2))
            for (const auto& [pb, cb] : B.mul(b1, b2)) acc[idx(pa, pb)] += ca * cb * sign;
          std::vector<std::pair<int, Rational>> v;
          for (auto& [k, c] : acc)
            if (sgn(c) != 0) v.emplace_back(k, c);
          if (!v.empty()) t.product[{i, j}] = v;
        }
  return t;
}

}  // namespace cdga

/// k (x) A with [x (x) a, y (x) b] = [x, y] (x) ab and d(x (x) a) = x (x) da.
/// Basis names are "<lie>.<cdga>" (the unit of A is dropped from names).
inline DGLieData tensor_model(const LieAlgebraSpec& k, const CDGASpec& A) {
  DGLieData out;
  auto name = [&](int x, int a) { return a == 0 ? k.names[x] : k.names[x] + "." + A.names[a]; };
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t x = 0; x < k.names.size(); ++x) out.degrees[A.degrees[a]].push_back(name(x, a));
  for (std::size_t x = 0; x < k.names.size(); ++x)
    for (std::size_t a = 0; a < A.size(); ++a) {
      if (A.d[a].empty()) continue;
      std::vector<Term> terms;
      for (const auto& [b, c] : A.d[a]) terms.emplace_back(name(x, b), c);
      out.differential.emplace_back(name(x, a), terms);
    }
  for (std::size_t x = 0; x < k.names.size(); ++x)
    for (std::size_t a = 0; a < A.size(); ++a)
      for (std::size_t y = 0; y < k.names.size(); ++y)
        for (std::size_t b = 0; b < A.size(); ++b) {
          if (std::make_pair(A.degrees[a], std::make_pair(a, x)) > std::make_pair(A.degrees[b], std::make_pair(b, y))) continue;
          std::map<std::string, Rational> acc;
          for (const auto& [z, c1] : k.br(static_cast<int>(x), static_cast<int>(y)))
            for (const auto& [p, c2] : A.mul(static_cast<int>(a), static_cast<int>(b))) acc[name(z, p)] += c1 * c2;
          std::vector<Term> terms;
          for (auto& [n, c] : acc)
            if (sgn(c) != 0) terms.emplace_back(n, c);
          if (!terms.empty()) out.bracket.push_back({{name(x, a), name(y, b)}, terms});
        }
  return out;
}

/// Strict morphism k (x) A -> k (x) (A (x) B) induced by a -> a (x) 1. A quasi-isomorphism
/// whenever B is acyclic apart from its unit.
inline std::map<int, QMatrix> unit_inclusion(const DGLieAlgebra& src, const DGLieAlgebra& tgt) {
  std::map<int, QMatrix> comps;
  for (int d = src.min_degree(); d <= src.max_degree(); ++d) {
    QMatrix m(tgt.dim(d), src.dim(d));
    for (std::size_t i = 0; i < src.dim(d); ++i) {
      auto f = tgt.space().find(src.space().name(d, i));
      if (!f || f->first != d) throw PreconditionError("unit_inclusion: target lacks basis vector " + src.space().name(d, i));
      m(f->second, i) = 1;
    }
    comps.emplace(d, std::move(m));
  }
  return comps;
}

}  // namespace defo
