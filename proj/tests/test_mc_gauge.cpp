#include <gtest/gtest.h>

#include "support.hpp"

using namespace defo;
using namespace testsupport;

namespace {

// Square matrices over R = Q[h]/(h)^{N+1}, for a matrix-group oracle of BCH.
struct RMat {
  std::size_t n;
  ContextPtr ctx;
  std::vector<SeriesElement> a;

  RMat(std::size_t n_, ContextPtr c, bool identity = false) : n(n_), ctx(c), a(n_ * n_, SeriesElement(c, false)) {
    if (identity)
      for (std::size_t i = 0; i < n; ++i) at(i, i) = SeriesElement::constant(c, 1);
  }
  SeriesElement& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const SeriesElement& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  RMat operator*(const RMat& o) const {
    RMat r(n, ctx);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) r.at(i, j) = r.at(i, j) + series_mul(at(i, k), o.at(k, j));
    return r;
  }
  RMat operator+(const RMat& o) const {
    RMat r(n, ctx);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  RMat scaled(const Rational& s) const {
    RMat r(n, ctx);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = series_mul(a[i], SeriesElement::constant(ctx, s));
    return r;
  }
  bool operator==(const RMat& o) const { return a == o.a; }
};

// Faithful representation of sl2: h = diag(1,-1), e = E12, f = E21.
RMat represent_sl2(const NilpotentDGLA& L, const Element& x) {
  RMat r(2, L.context());
  auto h = L.coefficient(x, "h"), e = L.coefficient(x, "e"), f = L.coefficient(x, "f");
  r.at(0, 0) = h;
  r.at(1, 1) = -h;
  r.at(0, 1) = e;
  r.at(1, 0) = f;
  return r;
}

RMat mexp(const RMat& x, int order) {
  RMat sum(x.n, x.ctx, true), term(x.n, x.ctx, true);
  for (int i = 1; i <= order; ++i) {
    term = (term * x).scaled(Rational(1, i));
    sum = sum + term;
  }
  return sum;
}

RMat mlog_unipotent(const RMat& u, int order) {
  RMat x = u + RMat(u.n, u.ctx, true).scaled(-1);
  RMat sum(u.n, u.ctx), pw(u.n, u.ctx, true);
  for (int i = 1; i <= order; ++i) {
    pw = pw * x;
    sum = sum + pw.scaled(Rational(i % 2 == 1 ? 1 : -1, i));
  }
  return sum;
}

DGLAPtr sl2() { return build(tensor_model(lie::sl2(), cdga::point())); }

}  // namespace

TEST(BCH, SecondOrderExample) {
  DGLieData d;
  d.degrees = {{0, {"x", "y", "z"}}};
  d.bracket = {{{"x", "y"}, {{"z", Rational(1)}}}};
  NilpotentDGLA L(build(d), TruncationContext::make(1, 2));
  Element x = L.from_terms({{"x", {1}, 1}}), y = L.from_terms({{"y", {1}, 1}});
  EXPECT_EQ(bch(L, x, y), x + y + L.from_terms({{"z", {2}, Rational(1, 2)}}));
}

TEST(BCH, ThirdOrderMatchesHandFormula) {
  NilpotentDGLA L(sl2(), TruncationContext::make(2, 3));
  Element x = L.from_terms({{"h", {1, 0}, 1}, {"e", {0, 1}, 2}});
  Element y = L.from_terms({{"f", {1, 0}, 1}, {"e", {1, 0}, -1}});
  auto br = [&](const Element& a, const Element& b) { return L.bracket(a, b); };
  Element expect = x + y + br(x, y) * Rational(1, 2) + br(x, br(x, y)) * Rational(1, 12) - br(y, br(x, y)) * Rational(1, 12);
  EXPECT_EQ(bch(L, x, y), expect);
}

TEST(BCH, AgreesWithMatrixGroupOracle) {
  Rng rng(11);
  for (int k : {1, 2})
    for (int n : {3, 4}) {
      NilpotentDGLA L(sl2(), TruncationContext::make(k, n));
      for (int s = 0; s < 4; ++s) {
        Element x = random_element(L, 0, rng), y = random_element(L, 0, rng);
        RMat lhs = represent_sl2(L, bch(L, x, y));
        RMat rhs = mlog_unipotent(mexp(represent_sl2(L, x), n) * mexp(represent_sl2(L, y), n), n);
        EXPECT_EQ(lhs, rhs);
      }
    }
}

TEST(BCH, AdjointIsMultiplicative) {
  Rng rng(5);
  NilpotentDGLA L(build(tensor_model(lie::heisenberg(), cdga::exterior2())), TruncationContext::make(2, 3));
  for (int s = 0; s < 5; ++s) {
    GaugeElement g = random_gauge(L, rng), h = random_gauge(L, rng);
    Element a = random_element(L, 1, rng);
    EXPECT_EQ(ad_exp(L, g, ad_exp(L, h, a)), ad_exp(L, gauge_compose(L, g, h), a));
  }
}

TEST(BCH, Associative) {
  Rng rng(6);
  NilpotentDGLA L(sl2(), TruncationContext::make(1, 4));
  for (int s = 0; s < 5; ++s) {
    Element a = random_element(L, 0, rng), b = random_element(L, 0, rng), c = random_element(L, 0, rng);
    EXPECT_EQ(bch(L, bch(L, a, b), c), bch(L, a, bch(L, b, c)));
    EXPECT_TRUE(bch(L, a, -a).is_zero());
  }
}

TEST(Gauge, AbelianActionIsTranslation) {
  NilpotentDGLA L(build(abelian_two_term()), TruncationContext::make(1, 1));
  for (int a = -2; a <= 2; ++a)
    for (int c = -2; c <= 2; ++c) {
      GaugeElement g{L.from_terms({{"u", {1}, a}})};
      EXPECT_EQ(af_action(L, g, L.from_terms({{"v", {1}, c}})), L.from_terms({{"v", {1}, c - a}}));
    }
}

TEST(Gauge, ActionLawAndMCPreservation) {
  Rng rng(21);
  for (int s = 0; s < 10; ++s) {
    NilpotentDGLA L(random_model(rng), TruncationContext::make(rng.uniform(1, 2), 3));
    Element w = random_mc(L, rng);
    ASSERT_TRUE(is_mc(L, w));
    GaugeElement g = random_gauge(L, rng), h = random_gauge(L, rng);
    Element moved = af_action(L, g, w);
    EXPECT_TRUE(is_mc(L, moved));
    EXPECT_EQ(af_action(L, g, af_action(L, h, w)), af_action(L, gauge_compose(L, g, h), w));
    EXPECT_EQ(af_action(L, gauge_inverse(g), moved), w);
  }
}

TEST(Gauge, AdjointIntertwinesTwistedDifferentials) {
  Rng rng(22);
  for (int s = 0; s < 10; ++s) {
    NilpotentDGLA L(random_model(rng), TruncationContext::make(1, 3));
    Element w = random_mc(L, rng);
    GaugeElement g = random_gauge(L, rng);
    Element w2 = af_action(L, g, w);
    for (int deg = L.g().min_degree(); deg <= L.g().max_degree(); ++deg) {
      Element a = random_element(L, deg, rng);
      EXPECT_EQ(ad_exp(L, g, twisted_d(L, w, a)), twisted_d(L, w2, ad_exp(L, g, a)));
      EXPECT_TRUE(twisted_d(L, w, twisted_d(L, w, a)).is_zero());
    }
  }
}

TEST(Gauge, NonMCInputsRejected) {
  NilpotentDGLA L(build(obstruction_algebra()), TruncationContext::make(1, 2));
  Element w = L.from_terms({{"v", {1}, 1}});
  EXPECT_FALSE(is_mc(L, w));
  EXPECT_THROW(MCElement::make(L, w), PreconditionError);
  EXPECT_THROW(TwistedComplex(L, w), PreconditionError);
}

TEST(Path, AbelianPathFromGauge) {
  NilpotentDGLA L(build(abelian_two_term()), TruncationContext::make(1, 2));
  auto w0 = MCElement::make(L, L.from_terms({{"v", {1}, 3}}));
  GaugeElement g{L.from_terms({{"u", {1}, 2}, {"u", {2}, 1}})};
  MCPath p = path_from_gauge(L, g, w0);
  ASSERT_EQ(p.one_part.coeffs.size(), 2u);
  EXPECT_EQ(p.one_part.coeffs[0], w0.value());
  EXPECT_EQ(p.one_part.coeffs[1], -L.d(g.log));
  ASSERT_EQ(p.form_part.coeffs.size(), 1u);
  EXPECT_EQ(p.form_part.coeffs[0], -g.log);
  EXPECT_EQ(integrate_mc_path(L, p), g);
}

TEST(Path, RoundTripRecoversGauge) {
  Rng rng(31);
  for (int s = 0; s < 8; ++s) {
    NilpotentDGLA L(random_model(rng), TruncationContext::make(rng.uniform(1, 2), 3));
    auto w = MCElement::make(L, random_mc(L, rng));
    GaugeElement g = random_gauge(L, rng);
    MCPath p = path_from_gauge(L, g, w);
    EXPECT_TRUE(path_defect(L, p).empty());
    EXPECT_EQ(path_at(p, 1), af_action(L, g, w.value()));
    EXPECT_EQ(integrate_mc_path(L, p), g);
  }
}

namespace {

// Operations making ElementPoly usable with bch_series.
struct TPoly {
  const NilpotentDGLA* L;
  ElementPoly p;
  TPoly operator+(const TPoly& o) const { return {L, poly_add(p, o.p)}; }
  TPoly operator-(const TPoly& o) const { return *this + o * Rational(-1); }
  TPoly operator*(const Rational& s) const {
    return {L, poly_map(p, [&](const Element& e) { return e * s; })};
  }
};

}  // namespace

TEST(Path, TimeDependentGeneratorIntegratesToProduct) {
  // g(t) = exp(t a) exp(t b); w1(t) = Af(g(t)) w, w0(t) = -(g' g^{-1})(t).
  Rng rng(41);
  for (int s = 0; s < 5; ++s) {
    NilpotentDGLA L(build(tensor_model(scramble(lie::sl2(), rng), cdga::dual_numbers_shifted())), TruncationContext::make(1, 3));
    Element w = random_mc(L, rng);
    Element a = random_element(L, 0, rng), b = random_element(L, 0, rng);
    auto br = [&](const TPoly& x, const TPoly& y) { return TPoly{&L, poly_bracket(L, x.p, y.p)}; };
    TPoly ta{&L, {{L.zero(0), a}}}, tb{&L, {{L.zero(0), b}}};
    ElementPoly G = poly_trim(bch_series(ta, tb, br, L.order()).p);
    // xi = sum_k ad(G)^k G' / (k+1)!
    ElementPoly dG = poly_derivative(G), xi = dG, term = dG;
    for (int k = 1; k <= L.order(); ++k) {
      term = poly_bracket(L, G, term);
      xi = poly_add(xi, poly_map(term, [&](const Element& e) { return e * factorial_inverse(k + 1); }));
    }
    // w1(t) = Af(exp G(t)) w, expanded as a polynomial in t.
    ElementPoly ad_w{{w}}, w1{{w}}, ad_dg = poly_map(G, [&](const Element& e) { return L.d(e); }), dterms;
    for (int i = 1; i <= L.order() + 1; ++i) {
      ad_w = poly_map(poly_bracket(L, G, ad_w), [&](const Element& e) { return e * Rational(1, i); });
      w1 = poly_add(w1, ad_w);
    }
    ElementPoly t = ad_dg;
    for (int i = 0; i <= L.order(); ++i) {
      w1 = poly_add(w1, poly_map(t, [&](const Element& e) { return e * -factorial_inverse(i + 1); }));
      t = poly_bracket(L, G, t);
    }
    MCPath p{poly_trim(w1), poly_trim(poly_map(xi, [](const Element& e) { return -e; }))};
    ASSERT_TRUE(path_defect(L, p).empty()) << path_defect(L, p);
    EXPECT_EQ(integrate_mc_path(L, p).log, bch(L, a, b));
  }
}

TEST(Path, InvalidPathRejected) {
  NilpotentDGLA L(build(abelian_two_term()), TruncationContext::make(1, 2));
  MCPath p{{{L.zero(1), L.from_terms({{"v", {1}, 1}})}}, {{L.from_terms({{"u", {1}, 2}})}}};
  EXPECT_FALSE(path_defect(L, p).empty());
  EXPECT_THROW(integrate_mc_path(L, p), PreconditionError);
}
