#include <gtest/gtest.h>

#include "defo/linf.hpp"
#include "support.hpp"

using namespace defo;
using namespace testsupport;

namespace {

void expect_ok(const Report& r) {
  const auto* f = r.first_failure();
  EXPECT_TRUE(r.ok()) << (f ? f->name + " at " + f->sample + " " + f->detail : "");
}

std::map<int, QMatrix> matrix_product(const DGLAMorphism& xi, const DGLAMorphism& phi) {
  std::map<int, QMatrix> out;
  const auto& g = *phi.source();
  for (int d = g.min_degree(); d <= g.max_degree(); ++d) {
    QMatrix a = xi.component(d), b = phi.component(d);
    QMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
    out.emplace(d, c);
  }
  return out;
}

bool same_taylor(const LInfData& a, const LInfData& b, int W) {
  for (int n = 1; n <= W; ++n) {
    auto ia = a.taylor.find(n), ib = b.taylor.find(n);
    bool ea = ia == a.taylor.end() || ia->second.empty(), eb = ib == b.taylor.end() || ib->second.empty();
    if (ea != eb) return false;
    if (!ea && ia->second != ib->second) return false;
  }
  return true;
}

}  // namespace

TEST(Bar, DifferentialSquaresToZero) {
  Rng rng(61);
  for (int s = 0; s < 6; ++s) {
    auto g = random_model(rng);
    for (int n = 1; n <= 3; ++n)
      for (const auto& w : bar::words(*g, n)) EXPECT_TRUE(bar::differential(*g, bar::differential(*g, w)).empty()) << bar::word_name(*g, w);
  }
}

TEST(Bar, OddLettersDoNotRepeat) {
  auto g = build(obstruction_algebra());  // v has shifted degree 0, w shifted degree 1
  bar::Word w{1, 1};
  EXPECT_EQ(bar::canonical_sign(*g, w), 0);
  bar::Word v{1, 0};
  EXPECT_EQ(bar::canonical_sign(*g, v), 1);
  EXPECT_EQ(v, (bar::Word{0, 1}));
}

TEST(LInf, StrictAndIdentityAreValid) {
  Rng rng(62);
  for (int s = 0; s < 4; ++s) {
    auto q = random_qiso(rng, s % 2 == 1);
    auto f = LInfMorphism::strict(*q.phi, 3);
    EXPECT_TRUE(f->data().is_strict());
    expect_ok(validate_linf(f->data(), 3));
    expect_ok(validate_linf(LInfMorphism::identity(q.g, 3)->data(), 3));
  }
}

TEST(LInf, ExpOfHomotopyIsValidAndNonStrict) {
  Rng rng(63);
  int nonstrict = 0;
  for (int s = 0; s < 6; ++s) {
    auto g = random_model(rng);
    auto d = exp_homotopy_automorphism(g, random_homotopy(*g, rng, 3), 3);
    expect_ok(validate_linf(d, 3));
    nonstrict += d.is_strict() ? 0 : 1;
  }
  EXPECT_GT(nonstrict, 3);
}

TEST(LInf, NonMorphismRejected) {
  auto g = build(tensor_model(lie::affine_line(), cdga::exterior2()));
  LInfData d{g, g, {}};
  for (int i = 0; i < static_cast<int>(g->space().total_dim()); ++i) d.taylor[1][{i}][i] = 2;  // 2 id breaks brackets
  EXPECT_FALSE(validate_linf(d, 2).ok());
  EXPECT_THROW(LInfMorphism::make(d, 2), PreconditionError);
}

TEST(LInf, SolvedSecondOrderFixtureAndPerturbation) {
  Rng rng(64);
  auto g = build(tensor_model(lie::affine_line(), cdga::quantum()));
  auto full = exp_homotopy_automorphism(g, random_homotopy(*g, rng, 2, 0.4), 2);
  ASSERT_FALSE(full.is_strict());
  LInfData d{g, g, {}};
  d.taylor[1] = full.taylor[1];
  ASSERT_TRUE(solve_taylor_order(d, 2));
  expect_ok(validate_linf(d, 2));
  // Perturb one F_2 entry; some perturbation must break the weight-2 relation and name its word.
  bool caught = false;
  for (const auto& w : bar::words(*g, 2)) {
    for (int t = 0; t < static_cast<int>(g->space().total_dim()) && !caught; ++t) {
      if (bar::sdeg(*g, t) != bar::word_degree(*g, w)) continue;
      LInfData p = d;
      p.taylor[2][w][t] += 1;
      auto r = validate_linf(p, 2);
      if (!r.ok()) {
        caught = true;
        EXPECT_EQ(r.first_failure()->name, "weight 2");
        EXPECT_NE(r.first_failure()->detail.find("word ("), std::string::npos);
        EXPECT_TRUE(validate_linf(p, 1).ok());
      }
    }
    if (caught) break;
  }
  EXPECT_TRUE(caught);
}

TEST(Pushforward, IdentityStrictAndZero) {
  Rng rng(65);
  for (int s = 0; s < 6; ++s) {
    auto q = random_qiso(rng, s % 2 == 1);
    auto ctx = TruncationContext::make(rng.uniform(1, 2), 3);
    NilpotentDGLA Lg(q.g, ctx), Lh(q.h, ctx);
    Element w = random_mc(Lg, rng);
    EXPECT_EQ(mc_pushforward(*LInfMorphism::identity(q.g, 3), Lg, Lg, w), w);
    EXPECT_EQ(mc_pushforward(*LInfMorphism::strict(*q.phi, 3), Lg, Lh, w), apply_morphism(*q.phi, Lg, Lh, w));
    auto f = random_linf(rng, 3);
    NilpotentDGLA Lg2(f.g, ctx), Lh2(f.h, ctx);
    EXPECT_TRUE(mc_pushforward(*f.phi, Lg2, Lh2, Lg2.zero(1)).is_zero());
  }
}

TEST(Pushforward, SecondOrderFormulaAndMC) {
  Rng rng(66);
  for (int s = 0; s < 6; ++s) {
    auto f = random_linf(rng, 2);
    NilpotentDGLA Lg(f.g, TruncationContext::make(1, 2)), Lh(f.h, TruncationContext::make(1, 2));
    Element w = random_mc(Lg, rng);
    Element p = mc_pushforward(*f.phi, Lg, Lh, w);
    EXPECT_TRUE(is_mc(Lh, p));
    Element expect = detail::multilinear(f.phi->data(), Lg, Lh, {&w}) + detail::multilinear(f.phi->data(), Lg, Lh, {&w, &w}) * Rational(1, 2);
    EXPECT_EQ(p, expect);
  }
}

TEST(Pushforward, CommutesWithTruncation) {
  Rng rng(67);
  for (int s = 0; s < 6; ++s) {
    auto f = random_linf(rng, 3);
    NilpotentDGLA Lg(f.g, TruncationContext::make(1, 3)), Lh(f.h, TruncationContext::make(1, 3));
    auto Lg2 = Lg.truncated(2), Lh2 = Lh.truncated(2);
    Element w = random_mc(Lg, rng);
    EXPECT_EQ(Lh.project(mc_pushforward(*f.phi, Lg, Lh, w), Lh2), mc_pushforward(*f.phi, Lg2, Lh2, Lg.project(w, Lg2)));
  }
}

TEST(Pushforward, RejectsShortHorizonAndNonMC) {
  Rng rng(68);
  auto f = random_linf(rng, 2);
  NilpotentDGLA Lg(f.g, TruncationContext::make(1, 3)), Lh(f.h, TruncationContext::make(1, 3));
  EXPECT_THROW(mc_pushforward(*f.phi, Lg, Lh, Lg.zero(1)), PreconditionError);
  auto g = build(obstruction_algebra());
  NilpotentDGLA L(g, TruncationContext::make(1, 2));
  auto id = LInfMorphism::identity(g, 2);
  EXPECT_THROW(mc_pushforward(*id, L, L, L.from_terms({{"v", {1}, 1}})), PreconditionError);
}

TEST(GaugeRespect, StrictMatchesMorphismImage) {
  Rng rng(69);
  for (int s = 0; s < 6; ++s) {
    auto q = random_qiso(rng, s % 2 == 1);
    auto ctx = TruncationContext::make(1, 2);
    NilpotentDGLA Lg(q.g, ctx), Lh(q.h, ctx);
    Element w = random_mc(Lg, rng);
    GaugeElement gamma = random_gauge(Lg, rng);
    auto r = gauge_respect(*LInfMorphism::strict(*q.phi, 2), Lg, Lh, w, gamma);
    EXPECT_EQ(r.h.log, apply_morphism(*q.phi, Lg, Lh, gamma).log);
    auto z = gauge_respect(*LInfMorphism::strict(*q.phi, 2), Lg, Lh, w, gauge_identity(Lg));
    EXPECT_TRUE(z.h.log.is_zero());
  }
}

TEST(GaugeRespect, NonStrictPushedPathIsMCWithRightEnds) {
  Rng rng(70);
  for (int s = 0; s < 8; ++s) {
    auto f = random_linf(rng, 3);
    auto ctx = TruncationContext::make(rng.uniform(1, 2), rng.uniform(2, 3));
    NilpotentDGLA Lg(f.g, ctx), Lh(f.h, ctx);
    Element w = random_mc(Lg, rng);
    GaugeElement gamma = random_gauge(Lg, rng);
    auto r = gauge_respect(*f.phi, Lg, Lh, w, gamma);
    EXPECT_TRUE(path_defect(Lh, r.pushed_path).empty());
    EXPECT_EQ(path_at(r.pushed_path, 0), mc_pushforward(*f.phi, Lg, Lh, w));
    EXPECT_EQ(path_at(r.pushed_path, 1), mc_pushforward(*f.phi, Lg, Lh, af_action(Lg, gamma, w)));
    EXPECT_EQ(af_action(Lh, r.h, path_at(r.pushed_path, 0)), path_at(r.pushed_path, 1));
  }
}

TEST(Compose, IdentityStrictAndAssociativity) {
  Rng rng(71);
  for (int s = 0; s < 4; ++s) {
    auto f = random_linf(rng, 3);
    expect_ok(validate_linf(f.phi->data(), 3));
    auto idg = LInfMorphism::identity(f.g, 3), idh = LInfMorphism::identity(f.h, 3);
    EXPECT_TRUE(same_taylor(compose_linf(*idg, *f.phi, 3)->data(), f.phi->data(), 3));
    EXPECT_TRUE(same_taylor(compose_linf(*f.phi, *idh, 3)->data(), f.phi->data(), 3));

    auto a = LInfMorphism::make(exp_homotopy_automorphism(f.g, random_homotopy(*f.g, rng, 3), 3), 3);
    auto b = LInfMorphism::make(exp_homotopy_automorphism(f.h, random_homotopy(*f.h, rng, 3), 3), 3);
    auto lhs = compose_linf(*compose_linf(*a, *f.phi, 3), *b, 3);
    auto rhs = compose_linf(*a, *compose_linf(*f.phi, *b, 3), 3);
    EXPECT_TRUE(same_taylor(lhs->data(), rhs->data(), 3));

    NilpotentDGLA Lg(f.g, TruncationContext::make(1, 3)), Lh(f.h, TruncationContext::make(1, 3));
    Element w = random_mc(Lg, rng);
    auto ab = compose_linf(*a, *f.phi, 3);
    EXPECT_EQ(mc_pushforward(*ab, Lg, Lh, w), mc_pushforward(*f.phi, Lg, Lh, mc_pushforward(*a, Lg, Lg, w)));
  }
}

TEST(Compose, StrictOfStrict) {
  Rng rng(72);
  auto q = random_qiso(rng, false);
  std::map<int, QMatrix> back;
  for (int d = q.h->min_degree(); d <= q.h->max_degree(); ++d) back.emplace(d, q.phi->component(d).transpose());
  auto proj = DGLAMorphism::make(q.h, q.g, back);
  auto composite = DGLAMorphism::make(q.g, q.g, matrix_product(*proj, *q.phi));
  auto c = compose_linf(*LInfMorphism::strict(*q.phi, 3), *LInfMorphism::strict(*proj, 3), 3);
  EXPECT_TRUE(same_taylor(c->data(), LInfMorphism::strict(*composite, 3)->data(), 3));
}
