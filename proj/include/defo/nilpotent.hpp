#pragma once

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "defo/dg_lie.hpp"
#include "defo/truncation.hpp"

namespace defo {

/// Homogeneous element of m (x) g^degree. Coefficients are stored densely, basis-major:
/// coeffs[b * M + m] multiplies (monomial m) (x) (basis vector b), M = size of the context.
struct Element {
  int degree = 0;
  std::size_t monomials = 0;
  QVector coeffs;

  Element() = default;
  Element(int deg, std::size_t dim, std::size_t mons) : degree(deg), monomials(mons), coeffs(dim * mons) {}

  std::size_t dim() const { return monomials == 0 ? 0 : coeffs.size() / monomials; }
  Rational& at(std::size_t b, std::size_t m) { return coeffs[b * monomials + m]; }
  const Rational& at(std::size_t b, std::size_t m) const { return coeffs[b * monomials + m]; }

  bool is_zero() const { return defo::is_zero(coeffs); }
  bool operator==(const Element& o) const = default;

  Element& operator+=(const Element& o) {
    same_shape(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (sgn(o.coeffs[i]) != 0) coeffs[i] += o.coeffs[i];
    return *this;
  }
  Element& operator-=(const Element& o) {
    same_shape(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (sgn(o.coeffs[i]) != 0) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  Element operator+(const Element& o) const { return Element(*this) += o; }
  Element operator-(const Element& o) const { return Element(*this) -= o; }
  Element operator-() const {
    Element r = *this;
    for (auto& x : r.coeffs) x = -x;
    return r;
  }
  Element operator*(const Rational& s) const {
    Element r = *this;
    for (auto& x : r.coeffs) x *= s;
    return r;
  }

 private:
  void same_shape(const Element& o) const {
    if (degree != o.degree || monomials != o.monomials || coeffs.size() != o.coeffs.size())
      throw DimensionMismatch("elements of different shape: degree " + std::to_string(degree) + " vs " +
                              std::to_string(o.degree));
  }
};

/// (basis-name, exponent vector, coefficient)
using ElementTerm = std::tuple<std::string, Monomial, Rational>;

/// m (x) g for R = Q[h_1..h_k]/(h)^{N+1}.
class NilpotentDGLA {
 public:
  NilpotentDGLA(DGLAPtr g, ContextPtr ctx) : g_(std::move(g)), ctx_(std::move(ctx)) {}

  const DGLAPtr& algebra() const { return g_; }
  const DGLieAlgebra& g() const { return *g_; }
  const ContextPtr& context() const { return ctx_; }
  int order() const { return ctx_->order(); }
  std::size_t monomials() const { return ctx_->size(); }
  std::size_t dim(int degree) const { return g_->dim(degree) * ctx_->size(); }

  Element zero(int degree) const { return Element(degree, g_->dim(degree), ctx_->size()); }

  Element from_vector(int degree, const QVector& v) const {
    Element e = zero(degree);
    if (v.size() != e.coeffs.size()) throw DimensionMismatch("from_vector: wrong length");
    e.coeffs = v;
    return e;
  }

  /// Builds an element from (name, monomial, coefficient) triples. All names must share one degree.
  Element from_terms(const std::vector<ElementTerm>& terms, std::optional<int> degree = std::nullopt) const {
    int deg = degree.value_or(terms.empty() ? 0 : g_->space().at(std::get<0>(terms.front())).first);
    Element e = zero(deg);
    for (const auto& [n, mon, c] : terms) {
      auto [d, b] = g_->space().at(n);
      if (d != deg) throw ParseError("basis vector '" + n + "' has degree " + std::to_string(d) + ", expected " + std::to_string(deg));
      if (static_cast<int>(mon.size()) != ctx_->params())
        throw ParseError("monomial for '" + n + "' has " + std::to_string(mon.size()) + " exponents, expected " +
                         std::to_string(ctx_->params()));
      for (int x : mon)
        if (x < 0) throw ParseError("negative exponent");
      if (total_degree(mon) == 0) throw ParseError("constant term for '" + n + "': elements live in m (x) g");
      int m = ctx_->index(mon);
      if (m < 0) continue;  // truncated away
      e.at(b, m) += c;
    }
    return e;
  }

  std::vector<ElementTerm> terms(const Element& e) const {
    std::vector<ElementTerm> out;
    for (std::size_t b = 0; b < e.dim(); ++b)
      for (std::size_t m = 0; m < e.monomials; ++m)
        if (sgn(e.at(b, m)) != 0) out.emplace_back(g_->space().name(e.degree, b), ctx_->monomial(m), e.at(b, m));
    return out;
  }

  /// Coefficient of one basis vector as an element of m.
  SeriesElement coefficient(const Element& e, const std::string& name) const {
    auto [d, b] = g_->space().at(name);
    SeriesElement s(ctx_);
    if (d != e.degree) return s;
    for (std::size_t m = 0; m < e.monomials; ++m) s.coefficients()[m] = e.at(b, m);
    return s;
  }

  Element d(const Element& a) const {
    check_shape(a);
    Element out = zero(a.degree + 1);
    const std::size_t M = ctx_->size();
    for (std::size_t b = 0; b < a.dim(); ++b) {
      const auto& col = g_->d_of(g_->space().global(a.degree, static_cast<int>(b)));
      if (col.empty()) continue;
      for (std::size_t m = 0; m < M; ++m) {
        const Rational& x = a.at(b, m);
        if (sgn(x) == 0) continue;
        for (const auto& [t, c] : col) out.at(t, m) += c * x;
      }
    }
    return out;
  }

  Element bracket(const Element& a, const Element& b) const {
    check_shape(a);
    check_shape(b);
    Element out = zero(a.degree + b.degree);
    if (out.coeffs.empty()) return out;
    const std::size_t M = ctx_->size();
    auto nz_a = nonzero_rows(a), nz_b = nonzero_rows(b);
    for (const auto& [i, ma] : nz_a) {
      int gx = g_->space().global(a.degree, static_cast<int>(i));
      for (const auto& [j, mb] : nz_b) {
        const auto& sc = g_->bracket_of(gx, g_->space().global(b.degree, static_cast<int>(j)));
        if (sc.empty()) continue;
        for (std::size_t p : ma)
          for (std::size_t q : mb) {
            int r = ctx_->product(p, q);
            if (r < 0) continue;
            Rational x = a.at(i, p) * b.at(j, q);
            for (const auto& [t, c] : sc) out.coeffs[t * M + r] += c * x;
          }
      }
    }
    return out;
  }

  /// Same algebra truncated at order j <= N.
  NilpotentDGLA truncated(int j) const {
    if (j > order()) throw PreconditionError("cannot truncate to a higher order");
    return NilpotentDGLA(g_, ctx_->with_order(j));
  }

  /// Reduction R -> R_j applied to an element of this algebra.
  Element project(const Element& a, const NilpotentDGLA& lower) const {
    check_shape(a);
    Element out = lower.zero(a.degree);
    for (std::size_t b = 0; b < a.dim(); ++b)
      for (std::size_t m = 0; m < out.monomials; ++m) out.at(b, m) = a.at(b, m);
    return out;
  }

  /// Inverse of project on the part below order j: pads with zero coefficients.
  Element embed(const Element& a, const NilpotentDGLA& lower) const {
    lower.check_shape(a);
    Element out = zero(a.degree);
    for (std::size_t b = 0; b < a.dim(); ++b)
      for (std::size_t m = 0; m < a.monomials; ++m) out.at(b, m) = a.at(b, m);
    return out;
  }

  /// Part of a supported on monomials of degree exactly j.
  Element layer(const Element& a, int j) const {
    Element out = zero(a.degree);
    for (std::size_t b = 0; b < a.dim(); ++b)
      for (std::size_t m = ctx_->layer_begin(j); m < ctx_->layer_end(j); ++m) out.at(b, m) = a.at(b, m);
    return out;
  }

  /// Coefficient vector in g^degree of one monomial.
  QVector slice(const Element& a, std::size_t m) const {
    QVector v(a.dim());
    for (std::size_t b = 0; b < a.dim(); ++b) v[b] = a.at(b, m);
    return v;
  }
  void set_slice(Element& a, std::size_t m, const QVector& v) const {
    for (std::size_t b = 0; b < a.dim(); ++b) a.at(b, m) = v[b];
  }

  /// Matrix of a Q-linear map m (x) g^from -> m (x) g^to given on elements.
  template <class F>
  QMatrix matrix_of(int from, int to, F&& f) const {
    QMatrix mat(dim(to), dim(from));
    Element e = zero(from);
    for (std::size_t c = 0; c < e.coeffs.size(); ++c) {
      e.coeffs[c] = 1;
      Element img = f(e);
      for (std::size_t r = 0; r < img.coeffs.size(); ++r)
        if (sgn(img.coeffs[r]) != 0) mat(r, c) = img.coeffs[r];
      e.coeffs[c] = 0;
    }
    return mat;
  }

  void check_shape(const Element& a) const {
    if (a.monomials != ctx_->size() || a.coeffs.size() != dim(a.degree))
      throw ContextMismatch("element does not belong to this nilpotent algebra (degree " + std::to_string(a.degree) + ")");
  }

  bool same_as(const NilpotentDGLA& o) const { return g_ == o.g_ && *ctx_ == *o.ctx_; }

  std::string to_string(const Element& e) const {
    std::string s;
    for (std::size_t b = 0; b < e.dim(); ++b) {
      SeriesElement c = coefficient(e, g_->space().name(e.degree, b));
      if (c.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*" + g_->space().name(e.degree, b);
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> nonzero_rows(const Element& a) const {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> out;
    for (std::size_t b = 0; b < a.dim(); ++b) {
      std::vector<std::size_t> ms;
      for (std::size_t m = 0; m < a.monomials; ++m)
        if (sgn(a.at(b, m)) != 0) ms.push_back(m);
      if (!ms.empty()) out.emplace_back(b, std::move(ms));
    }
    return out;
  }

  DGLAPtr g_;
  ContextPtr ctx_;
};

/// 1 (x) phi on one degree, as an element map.
inline Element apply_morphism(const DGLAMorphism& f, const NilpotentDGLA& src, const NilpotentDGLA& tgt, const Element& a) {
  src.check_shape(a);
  Element out = tgt.zero(a.degree);
  QMatrix c = f.component(a.degree);
  for (std::size_t m = 0; m < a.monomials; ++m) tgt.set_slice(out, m, c.apply(src.slice(a, m)));
  return out;
}

}  // namespace defo
