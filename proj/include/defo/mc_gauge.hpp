#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "defo/bch.hpp"
#include "defo/cohomology.hpp"
#include "defo/nilpotent.hpp"
#include "defo/poly.hpp"

namespace defo {

/// dw + 1/2 [w, w]
inline Element curvature(const NilpotentDGLA& L, const Element& w) {
  if (w.degree != 1) throw PreconditionError("curvature is defined on degree-1 elements");
  return L.d(w) + L.bracket(w, w) * Rational(1, 2);
}

inline bool is_mc(const NilpotentDGLA& L, const Element& w) { return curvature(L, w).is_zero(); }

/// Degree-1 element with zero curvature. Construction checks the equation.
class MCElement {
 public:
  static MCElement make(const NilpotentDGLA& L, Element w) {
    L.check_shape(w);
    if (w.degree != 1) throw PreconditionError("MC element must have degree 1");
    if (!is_mc(L, w)) throw PreconditionError("not a Maurer-Cartan element: curvature " + L.to_string(curvature(L, w)));
    return MCElement(std::move(w));
  }
  const Element& value() const { return w_; }
  bool operator==(const MCElement&) const = default;

 private:
  explicit MCElement(Element w) : w_(std::move(w)) {}
  Element w_;
};

/// exp(log) in the gauge group exp(m (x) g^0); stored by its logarithm.
struct GaugeElement {
  Element log;
  bool operator==(const GaugeElement&) const = default;
};

inline GaugeElement gauge_identity(const NilpotentDGLA& L) { return {L.zero(0)}; }
inline GaugeElement gauge_inverse(const GaugeElement& g) { return {-g.log}; }

/// Baker-Campbell-Hausdorff product, exact up to the truncation order.
inline Element bch(const NilpotentDGLA& L, const Element& x, const Element& y) {
  L.check_shape(x);
  L.check_shape(y);
  if (x.degree != 0 || y.degree != 0) throw PreconditionError("bch expects degree-0 elements");
  return bch_series(x, y, [&](const Element& a, const Element& b) { return L.bracket(a, b); }, L.order());
}

/// g1 * g2
inline GaugeElement gauge_compose(const NilpotentDGLA& L, const GaugeElement& g1, const GaugeElement& g2) {
  return {bch(L, g1.log, g2.log)};
}

/// exp(ad gamma)(a) = sum_i ad(gamma)^i(a) / i!
inline Element ad_exp(const NilpotentDGLA& L, const GaugeElement& g, const Element& a) {
  Element sum = a, term = a;
  for (int i = 1; !term.is_zero(); ++i) {
    term = L.bracket(g.log, term) * Rational(1, i);
    sum += term;
  }
  return sum;
}

/// Af(exp gamma)(w) = exp(ad gamma)(w) - sum_{i >= 0} ad(gamma)^i(d gamma) / (i+1)!.
/// Defined on all degree-1 elements; preserves the MC locus.
inline Element af_action(const NilpotentDGLA& L, const GaugeElement& g, const Element& w) {
  if (w.degree != 1) throw PreconditionError("gauge action is defined on degree-1 elements");
  Element out = ad_exp(L, g, w);
  Element term = L.d(g.log);
  for (int i = 0; !term.is_zero(); ++i) {
    out -= term * factorial_inverse(i + 1);
    term = L.bracket(g.log, term);
  }
  return out;
}

inline MCElement af_action(const NilpotentDGLA& L, const GaugeElement& g, const MCElement& w) {
  Element out = af_action(L, g, w.value());
  check(is_mc(L, out), "gauge action left the MC locus");
  return MCElement::make(L, std::move(out));
}

/// Twisted differential d_w = d + [w, -] on m (x) g.
inline Element twisted_d(const NilpotentDGLA& L, const Element& w, const Element& a) {
  return L.d(a) + L.bracket(w, a);
}

/// (m (x) g, d_w) as Q-matrices, one per degree from min-2 to max.
class TwistedComplex {
 public:
  TwistedComplex(const NilpotentDGLA& L, const Element& w) : L_(L), w_(w) {
    if (!is_mc(L, w)) throw PreconditionError("twisted complex needs an MC element");
    const auto& g = L.g();
    if (g.space().empty()) return;
    for (int i = g.min_degree() - 2; i <= g.max_degree(); ++i)
      d_.emplace(i, L.matrix_of(i, i + 1, [&](const Element& a) { return twisted_d(L, w, a); }));
  }

  const NilpotentDGLA& algebra() const { return L_; }
  const Element& base_point() const { return w_; }

  /// d_w : m (x) g^i -> m (x) g^{i+1}
  QMatrix d(int i) const {
    auto it = d_.find(i);
    return it != d_.end() ? it->second : QMatrix(L_.dim(i + 1), L_.dim(i));
  }

  CohomologySpace cohomology(int i) const { return compute_cohomology(i, L_.dim(i), d(i - 1), d(i)); }

 private:
  NilpotentDGLA L_;
  Element w_;
  std::map<int, QMatrix> d_;
};

inline TwistedComplex twisted(const NilpotentDGLA& L, const MCElement& w) { return TwistedComplex(L, w.value()); }

// Polynomials in t with coefficients in m (x) g.

using ElementPoly = Poly<Element>;

inline ElementPoly poly_bracket(const NilpotentDGLA& L, const ElementPoly& p, const ElementPoly& q) {
  ElementPoly r;
  if (p.coeffs.empty() || q.coeffs.empty()) return r;
  int deg = p.coeffs[0].degree + q.coeffs[0].degree;
  r.coeffs.assign(p.size() + q.size() - 1, L.zero(deg));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < q.size(); ++j)
      if (!q.coeffs[j].is_zero()) r.coeffs[i + j] += L.bracket(p.coeffs[i], q.coeffs[j]);
  }
  return r;
}

inline ElementPoly poly_map(const ElementPoly& p, const std::function<Element(const Element&)>& f) {
  ElementPoly r;
  for (const auto& c : p.coeffs) r.coeffs.push_back(f(c));
  return r;
}

inline ElementPoly poly_add(const ElementPoly& a, const ElementPoly& b) {
  ElementPoly r;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a.size() && i < b.size()) r.coeffs.push_back(a.coeffs[i] + b.coeffs[i]);
    else r.coeffs.push_back(i < a.size() ? a.coeffs[i] : b.coeffs[i]);
  }
  return r;
}

/// Drops trailing zero coefficients, keeping at least one.
inline ElementPoly poly_trim(ElementPoly p) {
  while (p.coeffs.size() > 1 && p.coeffs.back().is_zero()) p.coeffs.pop_back();
  return p;
}

/// MC element of m (x) Omega(t) (x) g written as w1(t) + dt w0(t).
/// The MC equation splits into: w1(t) is MC for every t, and
///   d/dt w1(t) = d(w0(t)) + [w1(t), w0(t)].
struct MCPath {
  ElementPoly one_part;   ///< degree 1 coefficients
  ElementPoly form_part;  ///< degree 0 coefficients of dt
  bool operator==(const MCPath&) const = default;
};

inline Element path_at(const MCPath& p, const Rational& t) { return poly_eval(p.one_part, t); }

/// Returns an empty string when the path satisfies the MC equation in m (x) Omega (x) g,
/// otherwise a description of the first failure.
inline std::string path_defect(const NilpotentDGLA& L, const MCPath& p) {
  if (p.one_part.coeffs.empty() || p.form_part.coeffs.empty()) return "empty path";
  for (const auto& c : p.one_part.coeffs) {
    L.check_shape(c);
    if (c.degree != 1) return "one-form part must have degree 1";
  }
  for (const auto& c : p.form_part.coeffs) {
    L.check_shape(c);
    if (c.degree != 0) return "dt part must have degree 0";
  }
  if (!is_mc(L, p.one_part.coeffs[0])) return "w1(0) is not MC";
  ElementPoly lhs = poly_derivative(p.one_part);
  ElementPoly rhs = poly_add(poly_map(p.form_part, [&](const Element& e) { return L.d(e); }),
                             poly_bracket(L, p.one_part, p.form_part));
  lhs = poly_trim(lhs);
  rhs = poly_trim(rhs);
  if (!(lhs == rhs)) return "d/dt w1 != d(w0) + [w1, w0]";
  return "";
}

/// w1(t) = Af(exp(t gamma))(w0), w0(t) = -gamma.
inline MCPath path_from_gauge(const NilpotentDGLA& L, const GaugeElement& g, const MCElement& w) {
  MCPath p;
  const Element dg = L.d(g.log);
  Element ad_w = w.value();   // ad(gamma)^n w / n!
  Element ad_dg = dg;         // ad(gamma)^{n-1} d gamma / n!, starting at n = 1
  p.one_part.coeffs.push_back(w.value());
  for (int n = 1; !(ad_w.is_zero() && ad_dg.is_zero()); ++n) {
    ad_w = L.bracket(g.log, ad_w) * Rational(1, n);
    if (n > 1) ad_dg = L.bracket(g.log, ad_dg) * Rational(1, n);
    p.one_part.coeffs.push_back(ad_w - ad_dg);
  }
  p.one_part = poly_trim(p.one_part);
  p.form_part.coeffs.push_back(-g.log);
  check(path_defect(L, p).empty(), "path_from_gauge produced an invalid path");
  return p;
}

/// Gauge element g with Af(g)(w1(0)) = w1(1). Solves dg/dt = xi(t) g with xi = -w0(t),
/// i.e. gamma' = sum_k B_k/k! ad(gamma)^k xi for g(t) = exp(gamma(t)), one order of m per pass.
inline GaugeElement integrate_mc_path(const NilpotentDGLA& L, const MCPath& p) {
  auto defect = path_defect(L, p);
  if (!defect.empty()) throw PreconditionError("not an MC path: " + defect);
  const ElementPoly xi = poly_map(p.form_part, [](const Element& e) { return -e; });
  auto bern = bernoulli_numbers(L.order() + 1);
  ElementPoly gamma{{L.zero(0)}};
  for (int pass = 0; pass < L.order(); ++pass) {
    ElementPoly rhs = xi, term = xi;
    for (int k = 1; k <= L.order(); ++k) {
      term = poly_bracket(L, gamma, term);
      if (sgn(bern[k]) != 0) rhs = poly_add(rhs, poly_map(term, [&](const Element& e) { return e * (bern[k] * factorial_inverse(k)); }));
    }
    gamma = poly_trim(poly_integrate(poly_trim(rhs)));
  }
  GaugeElement g{poly_eval(gamma, Rational(1))};
  check(af_action(L, g, path_at(p, 0)) == path_at(p, 1), "integrated gauge does not connect the path endpoints");
  return g;
}

}  // namespace defo
