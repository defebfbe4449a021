#include <gtest/gtest.h>

#include "defo/cohomology.hpp"
#include "defo/poly.hpp"
#include "defo/qmatrix.hpp"
#include "defo/truncation.hpp"

using namespace defo;

namespace {

QMatrix mat(std::size_t r, std::size_t c, std::vector<long> v) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = v[i * c + j];
  return m;
}

QVector vec(std::vector<long> v) {
  QVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Rational, RoundTripsThroughStrings) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-3")), "-3");
  EXPECT_EQ(to_string(parse_rational("0/7")), "0");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("2/-3"), ParseError);
}

TEST(Truncation, GradedLexBasis) {
  auto ctx = TruncationContext::make(2, 2);
  ASSERT_EQ(ctx->size(), 5u);
  EXPECT_EQ(ctx->monomial(0), (Monomial{1, 0}));
  EXPECT_EQ(ctx->monomial(1), (Monomial{0, 1}));
  EXPECT_EQ(ctx->monomial(2), (Monomial{2, 0}));
  EXPECT_EQ(ctx->monomial(3), (Monomial{1, 1}));
  EXPECT_EQ(ctx->monomial(4), (Monomial{0, 2}));
  EXPECT_EQ(ctx->prefix(1), 2u);
  EXPECT_EQ(ctx->layer_begin(2), 2u);
  EXPECT_EQ(ctx->layer_end(2), 5u);
  EXPECT_EQ(ctx->product(0, 1), 3);
  EXPECT_EQ(ctx->product(2, 0), -1);
}

TEST(Truncation, LowerOrderBasisIsPrefix) {
  auto big = TruncationContext::make(2, 4), small = TruncationContext::make(2, 2);
  for (std::size_t i = 0; i < small->size(); ++i) EXPECT_EQ(big->monomial(i), small->monomial(i));
}

TEST(Series, SquareOfParameterVanishesAtOrderOne) {
  auto c1 = TruncationContext::make(1, 1);
  auto h = SeriesElement::monomial(c1, {1});
  EXPECT_TRUE(series_mul(h, h).is_zero());

  auto c2 = TruncationContext::make(1, 2);
  auto h2 = SeriesElement::monomial(c2, {1});
  EXPECT_EQ(series_mul(h2, h2), SeriesElement::monomial(c2, {2}));
}

TEST(Series, GeometricInverse) {
  auto c = TruncationContext::make(1, 2);
  auto one = SeriesElement::constant(c, 1);
  auto h = SeriesElement::monomial(c, {1});
  auto h2 = SeriesElement::monomial(c, {2});
  EXPECT_EQ(series_mul(one + h, one - h + h2), one);
}

TEST(Series, ContextMismatchIsAnError) {
  auto a = SeriesElement::monomial(TruncationContext::make(1, 2), {1});
  auto b = SeriesElement::monomial(TruncationContext::make(1, 3), {1});
  EXPECT_THROW(series_mul(a, b), ContextMismatch);
  EXPECT_THROW(a + b, ContextMismatch);
}

TEST(Poly, IntegrateHasZeroConstantTerm) {
  Poly<Rational> p{{Rational(0), Rational(0), Rational(3)}};
  auto q = poly_integrate(p);
  ASSERT_EQ(q.coeffs.size(), 4u);
  EXPECT_EQ(q.coeffs[0], 0);
  EXPECT_EQ(q.coeffs[3], 1);
  EXPECT_EQ(poly_derivative(q).coeffs[2], 3);
  EXPECT_EQ(poly_eval(q, Rational(2)), 8);
}

TEST(LinearAlgebra, RrefAndPivots) {
  auto r = rref(mat(3, 4, {1, 2, 0, 1, 2, 4, 1, 3, 0, 0, 1, 1}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(r.reduced(0, 1), 2);
  EXPECT_EQ(r.reduced(1, 3), 1);
}

TEST(LinearAlgebra, KernelAndImage) {
  QMatrix m = mat(2, 3, {1, 1, 0, 0, 1, 1});
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE(is_zero(m.apply(k[0])));
  EXPECT_EQ(k[0], vec({1, -1, 1}));
  EXPECT_EQ(image_basis(m).size(), 2u);
}

TEST(LinearAlgebra, SolveAndSpan) {
  QMatrix m = mat(2, 2, {1, 1, 2, 2});
  EXPECT_FALSE(solve(m, vec({1, 0})).has_value());
  auto x = solve(m, vec({1, 2}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m.apply(*x), vec({1, 2}));
  EXPECT_TRUE(in_span(vec({2, 4}), {vec({1, 2})}));
  EXPECT_FALSE(in_span(vec({2, 5}), {vec({1, 2})}));
  EXPECT_THROW(in_span(vec({1, 2, 3}), {vec({1, 2})}), DimensionMismatch);
  EXPECT_THROW(solve(m, vec({1})), DimensionMismatch);
}

TEST(LinearAlgebra, LeftInverse) {
  QMatrix m = mat(3, 2, {1, 0, 1, 1, 0, 2});
  EXPECT_EQ(left_inverse(m) * m, QMatrix::identity(2));
  EXPECT_THROW(left_inverse(mat(2, 2, {1, 1, 1, 1})), PreconditionError);
}

TEST(Cohomology, CircleComplex) {
  // C^0 = Q^2 -> C^1 = Q^2 with d = [[-1, 1], [1, -1]]: H^0 = H^1 = Q.
  QMatrix d = mat(2, 2, {-1, 1, 1, -1});
  auto h0 = compute_cohomology(0, 2, QMatrix(), d);
  auto h1 = compute_cohomology(1, 2, d, QMatrix());
  EXPECT_EQ(h0.dimension(), 1u);
  EXPECT_EQ(h1.dimension(), 1u);
  EXPECT_EQ(h1.class_of(vec({1, 1})), h1.class_of(vec({0, 2})));
  EXPECT_EQ(h1.class_of(vec({-1, 1})), vec({0}));
  EXPECT_THROW(h0.class_of(vec({1, 0})), PreconditionError);
  for (std::size_t k = 0; k < h1.dimension(); ++k) {
    QVector e(1);
    e[0] = 1;
    EXPECT_EQ(h1.class_of(h1.representative_of(e)), e);
  }
}
