#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "defo/rational.hpp"

namespace defo {

/// Exponent vector of a monomial in the parameters h_1..h_k.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

/// R = Q[h_1..h_k]/(h)^{N+1}. Stores the graded-lex basis of the maximal ideal m
/// (monomials of total degree 1..N) and its multiplication table.
///
/// Monomials are ordered by total degree, then by decreasing exponent vector, so the
/// basis of an order-j context is a prefix of the basis of any order-N context with N >= j.
class TruncationContext {
 public:
  static std::shared_ptr<const TruncationContext> make(int params, int order) {
    if (params < 1) throw PreconditionError("need at least one parameter");
    if (order < 0) throw PreconditionError("truncation order must be non-negative");
    return std::shared_ptr<const TruncationContext>(new TruncationContext(params, order));
  }

  int params() const { return k_; }
  int order() const { return n_; }
  std::size_t size() const { return mons_.size(); }
  const Monomial& monomial(std::size_t i) const { return mons_[i]; }
  const std::vector<Monomial>& monomials() const { return mons_; }
  int degree(std::size_t i) const { return deg_[i]; }

  /// Index of m, or -1 if it is not a basis monomial (degree 0 or above N).
  int index(const Monomial& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }
  /// Index of the product monomial, or -1 if it is truncated away.
  int product(std::size_t i, std::size_t j) const { return mul_[i * mons_.size() + j]; }

  /// Number of monomials of degree <= j; equals size() of the order-j context.
  std::size_t prefix(int j) const {
    if (j <= 0) return 0;
    if (j >= n_) return mons_.size();
    return layer_start_[j + 1];
  }
  std::size_t layer_begin(int j) const { return j < 1 ? 0 : prefix(j - 1); }
  std::size_t layer_end(int j) const { return prefix(j); }

  std::shared_ptr<const TruncationContext> with_order(int j) const { return make(k_, j); }

  bool operator==(const TruncationContext& o) const { return k_ == o.k_ && n_ == o.n_; }

  std::string monomial_name(std::size_t i) const {
    std::string s;
    for (int v = 0; v < k_; ++v) {
      int e = mons_[i][v];
      if (e == 0) continue;
      if (!s.empty()) s += "*";
      s += k_ == 1 ? "h" : "h" + std::to_string(v + 1);
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  TruncationContext(int k, int n) : k_(k), n_(n) {
    layer_start_.assign(n + 2, 0);
    for (int d = 1; d <= n; ++d) {
      layer_start_[d] = static_cast<int>(mons_.size());
      std::vector<Monomial> layer;
      Monomial m(k, 0);
      enumerate(d, 0, m, layer);
      for (auto& x : layer) mons_.push_back(x);
    }
    layer_start_[n + 1] = static_cast<int>(mons_.size());
    for (std::size_t i = 0; i < mons_.size(); ++i) {
      index_[mons_[i]] = static_cast<int>(i);
      deg_.push_back(total_degree(mons_[i]));
    }
    mul_.assign(mons_.size() * mons_.size(), -1);
    for (std::size_t i = 0; i < mons_.size(); ++i)
      for (std::size_t j = 0; j < mons_.size(); ++j) {
        if (deg_[i] + deg_[j] > n_) continue;
        Monomial p(k_);
        for (int v = 0; v < k_; ++v) p[v] = mons_[i][v] + mons_[j][v];
        mul_[i * mons_.size() + j] = index_.at(p);
      }
  }

  // Exponent vectors of total degree d in decreasing lexicographic order.
  void enumerate(int remaining, int var, Monomial& m, std::vector<Monomial>& out) {
    if (var == k_ - 1) {
      m[var] = remaining;
      out.push_back(m);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      m[var] = e;
      enumerate(remaining - e, var + 1, m, out);
    }
    m[var] = 0;
  }

  int k_, n_;
  std::vector<Monomial> mons_;
  std::vector<int> deg_, layer_start_, mul_;
  std::map<Monomial, int> index_;
};

using ContextPtr = std::shared_ptr<const TruncationContext>;

inline void require_same_context(const TruncationContext& a, const TruncationContext& b) {
  if (!(a == b))
    throw ContextMismatch("truncation contexts differ: (k=" + std::to_string(a.params()) + ", N=" +
                          std::to_string(a.order()) + ") vs (k=" + std::to_string(b.params()) +
                          ", N=" + std::to_string(b.order()) + ")");
}

/// Element of R (constant + m-part) or of m (in_ideal set, constant forced to zero).
class SeriesElement {
 public:
  SeriesElement(ContextPtr ctx, bool in_ideal = true)
      : ctx_(std::move(ctx)), coeffs_(ctx_->size()), in_ideal_(in_ideal) {}

  static SeriesElement constant(ContextPtr ctx, const Rational& c) {
    SeriesElement s(std::move(ctx), sgn(c) == 0);
    s.constant_ = c;
    return s;
  }
  static SeriesElement monomial(ContextPtr ctx, const Monomial& m, const Rational& c = 1) {
    SeriesElement s(ctx, true);
    if (total_degree(m) == 0) return constant(ctx, c);
    int i = ctx->index(m);
    if (i >= 0) s.coeffs_[i] = c;
    return s;
  }

  const ContextPtr& context() const { return ctx_; }
  bool in_ideal() const { return in_ideal_; }
  const Rational& constant_term() const { return constant_; }
  const QVector& coefficients() const { return coeffs_; }
  QVector& coefficients() { return coeffs_; }
  Rational coefficient(const Monomial& m) const {
    if (total_degree(m) == 0) return constant_;
    int i = ctx_->index(m);
    return i < 0 ? Rational(0) : coeffs_[i];
  }

  bool is_zero() const { return sgn(constant_) == 0 && defo::is_zero(coeffs_); }
  bool operator==(const SeriesElement& o) const {
    return *ctx_ == *o.ctx_ && constant_ == o.constant_ && coeffs_ == o.coeffs_;
  }

  SeriesElement operator+(const SeriesElement& o) const {
    require_same_context(*ctx_, *o.ctx_);
    SeriesElement r(ctx_, in_ideal_ && o.in_ideal_);
    r.constant_ = constant_ + o.constant_;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
  }
  SeriesElement operator-() const {
    SeriesElement r = *this;
    r.constant_ = -r.constant_;
    for (auto& x : r.coeffs_) x = -x;
    return r;
  }
  SeriesElement operator-(const SeriesElement& o) const { return *this + (-o); }

  friend SeriesElement series_mul(const SeriesElement& a, const SeriesElement& b);

  std::string to_string() const {
    std::string s;
    auto term = [&](const Rational& c, const std::string& mon) {
      if (sgn(c) == 0) return;
      std::string cs = defo::to_string(c);
      if (!s.empty()) s += sgn(c) > 0 ? " + " : " - ";
      else if (sgn(c) < 0) s += "-";
      Rational a = abs(c);
      if (mon.empty()) s += defo::to_string(a);
      else if (a == 1) s += mon;
      else s += defo::to_string(a) + "*" + mon;
    };
    term(constant_, "");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) term(coeffs_[i], ctx_->monomial_name(i));
    return s.empty() ? "0" : s;
  }

 private:
  ContextPtr ctx_;
  Rational constant_ = 0;
  QVector coeffs_;
  bool in_ideal_;
};

/// Truncated product in R. Both factors must share one context.
inline SeriesElement series_mul(const SeriesElement& a, const SeriesElement& b) {
  require_same_context(*a.ctx_, *b.ctx_);
  const auto& ctx = *a.ctx_;
  SeriesElement r(a.ctx_, a.in_ideal_ || b.in_ideal_);
  r.constant_ = a.constant_ * b.constant_;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (sgn(a.constant_) != 0) r.coeffs_[i] += a.constant_ * b.coeffs_[i];
    if (sgn(b.constant_) != 0) r.coeffs_[i] += b.constant_ * a.coeffs_[i];
  }
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < ctx.size(); ++j) {
      int p = ctx.product(i, j);
      if (p >= 0 && sgn(b.coeffs_[j]) != 0) r.coeffs_[p] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return r;
}

}  // namespace defo
