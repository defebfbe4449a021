#pragma once

// Random models and samplers shared by the unit tests and the acceptance suite.

#include <random>
#include <string>
#include <vector>

#include "defo/deligne.hpp"
#include "defo/linf.hpp"
#include "defo/models.hpp"

namespace testsupport {

using namespace defo;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
  /// Small rationals: mostly integers in [-2, 2], sometimes halves and thirds.
  Rational rational() {
    int n = uniform(-2, 2);
    int d = coin(0.25) ? uniform(2, 3) : 1;
    return ratio(n, d);
  }
};

inline DGLAPtr build(const DGLieData& d) { return DGLieAlgebra::make(d); }

/// u (deg 0) -> v (deg 1)
inline DGLieData abelian_two_term() {
  DGLieData d;
  d.degrees = {{0, {"u"}}, {1, {"v"}}};
  d.differential = {{"u", {{"v", Rational(1)}}}};
  return d;
}

/// v (deg 1), w (deg 2), [v, v] = 2w
inline DGLieData obstruction_algebra() {
  DGLieData d;
  d.degrees = {{1, {"v"}}, {2, {"w"}}};
  d.bracket = {{{"v", "v"}, {{"w", Rational(2)}}}};
  return d;
}

/// Basis change of a Lie algebra by a random upper unitriangular integer matrix.
inline LieAlgebraSpec scramble(const LieAlgebraSpec& k, Rng& rng) {
  const int n = static_cast<int>(k.names.size());
  QMatrix p = QMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin(0.5)) p(i, j) = rng.uniform(-1, 1);
  QMatrix pinv = left_inverse(p);
  LieAlgebraSpec out;
  out.names = k.names;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QVector acc(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          Rational c = p(a, i) * p(b, j);
          if (sgn(c) == 0) continue;
          for (const auto& [z, s] : k.br(a, b)) acc[z] += c * s;
        }
      QVector img = pinv.apply(acc);
      std::vector<std::pair<int, Rational>> v;
      for (int z = 0; z < n; ++z)
        if (sgn(img[z]) != 0) v.emplace_back(z, img[z]);
      if (!v.empty()) out.bracket[{i, j}] = v;
    }
  return out;
}

inline LieAlgebraSpec random_lie(Rng& rng) {
  switch (rng.uniform(0, 3)) {
    case 0: return scramble(lie::heisenberg(), rng);
    case 1: return scramble(lie::sl2(), rng);
    case 2: return scramble(lie::affine_line(), rng);
    default: return lie::abelian(rng.uniform(1, 2));
  }
}

/// Small Lie (x) CDGA models with every degree at most 12-dimensional.
inline DGLAPtr random_model(Rng& rng) {
  switch (rng.uniform(0, 5)) {
    case 0: return build(tensor_model(scramble(lie::affine_line(), rng), cdga::exterior2()));
    case 1: return build(tensor_model(random_lie(rng), cdga::dual_numbers_shifted()));
    case 2: return build(tensor_model(random_lie(rng), cdga::quantum()));
    case 3: return build(tensor_model(scramble(lie::heisenberg(), rng), cdga::exterior2()));
    case 4: return build(tensor_model(random_lie(rng), cdga::negative_exterior()));
    default: return build(abelian_two_term());
  }
}

inline Element random_element(const NilpotentDGLA& L, int degree, Rng& rng, double density = 0.5) {
  Element e = L.zero(degree);
  for (auto& c : e.coeffs)
    if (rng.coin(density)) c = rng.rational();
  return e;
}

inline GaugeElement random_gauge(const NilpotentDGLA& L, Rng& rng, double density = 0.5) {
  return {random_element(L, 0, rng, density)};
}

/// Random cocycle in n_j (x) Z^1(g) inside Lj.
inline Element random_layer_cocycle(const NilpotentDGLA& Lj, Rng& rng) {
  const auto& Z = Lj.g().cohomology(1).cocycles;
  Element e = Lj.zero(1);
  const auto& ctx = *Lj.context();
  for (std::size_t m = ctx.layer_begin(Lj.order()); m < ctx.layer_end(Lj.order()); ++m) {
    QVector v(Lj.g().dim(1));
    for (const auto& z : Z)
      if (rng.coin()) v = add(v, scaled(z, rng.rational()));
    Lj.set_slice(e, m, v);
  }
  return e;
}

/// Random MC element: order-by-order lifting with random cocycle corrections, restarting on
/// obstructions; falls back to the gauge orbit of 0. A random gauge move is applied at the end.
inline Element random_mc(const NilpotentDGLA& L, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    NilpotentDGLA prev = L.truncated(0);
    Element w = prev.zero(1);
    bool ok = true;
    for (int j = 1; j <= L.order() && ok; ++j) {
      NilpotentDGLA Lj = L.truncated(j);
      auto next = lift_mc_one_order(Lj, prev, w, random_layer_cocycle(Lj, rng));
      if (!next) next = lift_mc_one_order(Lj, prev, w);
      if (!next) {
        ok = false;
        break;
      }
      w = *next;
      prev = Lj;
    }
    if (ok) return af_action(L, random_gauge(L, rng, 0.3), w);
  }
  return af_action(L, random_gauge(L, rng), L.zero(1));
}

struct QisoPair {
  DGLAPtr g, h;
  MorphismPtr phi;
};

/// g = k (x) A and h = k (x) (A (x) B) with B contractible apart from its unit; phi is the unit
/// inclusion. When `reverse` is set, phi is instead the projection h -> g killing B's ideal.
inline QisoPair random_qiso(Rng& rng, bool reverse = false) {
  LieAlgebraSpec k;
  CDGASpec A;
  switch (rng.uniform(0, 3)) {
    case 0: k = scramble(lie::affine_line(), rng); A = cdga::exterior2(); break;
    case 1: k = scramble(lie::sl2(), rng); A = cdga::dual_numbers_shifted(); break;
    case 2: k = scramble(lie::affine_line(), rng); A = cdga::quantum(); break;
    default: k = lie::abelian(2); A = cdga::exterior2(); break;
  }
  auto g = build(tensor_model(k, A));
  auto h = build(tensor_model(k, cdga::tensor(A, cdga::contractible_pair())));
  auto inc = unit_inclusion(*g, *h);
  if (!reverse) return {g, h, DGLAMorphism::make(g, h, inc)};
  std::map<int, QMatrix> proj;
  for (auto& [d, m] : inc) proj.emplace(d, m.transpose());
  for (int d = h->min_degree(); d <= h->max_degree(); ++d)
    if (!proj.count(d)) proj.emplace(d, QMatrix(g->dim(d), h->dim(d)));
  return {h, g, DGLAMorphism::make(h, g, proj)};
}

/// Random degree -1 corestriction on words of weight 2..W for exp_homotopy_automorphism.
inline std::map<bar::Word, bar::HVec> random_homotopy(const DGLieAlgebra& g, Rng& rng, int W, double density = 0.15) {
  std::map<bar::Word, bar::HVec> h;
  const int dim = static_cast<int>(g.space().total_dim());
  for (int n = 2; n <= W; ++n)
    for (const auto& w : bar::words(g, n))
      for (int t = 0; t < dim; ++t)
        if (bar::sdeg(g, t) == bar::word_degree(g, w) - 1 && rng.coin(density)) {
          Rational c = rng.rational();
          if (sgn(c) != 0) h[w][t] = c;
        }
  return h;
}

/// L-infinity morphism g -> h of the form (strict qiso) o exp([Q, H]), with horizon W.
struct LInfSample {
  DGLAPtr g, h;
  LInfPtr phi;
};

inline LInfSample random_linf(Rng& rng, int W, bool strict = false) {
  auto q = random_qiso(rng, rng.coin());
  auto s = LInfMorphism::strict(*q.phi, W);
  if (strict) return {q.g, q.h, s};
  auto a = LInfMorphism::make(exp_homotopy_automorphism(q.g, random_homotopy(*q.g, rng, W), W), W);
  return {q.g, q.h, compose_linf(*a, *s, W)};
}

}  // namespace testsupport
