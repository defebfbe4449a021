#pragma once

#include <optional>
#include <string>
#include <vector>

#include "defo/mc_gauge.hpp"

namespace defo {

enum class ObstructionLevel { O1, O2 };

/// Class in n_j (x) H^degree(g), where n_j = m^j / m^{j+1}. One coordinate vector (in the
/// chosen basis of H^degree(g)) per monomial of total degree j.
struct ObstructionClass {
  ObstructionLevel level = ObstructionLevel::O2;
  int order = 0;
  int degree = 0;
  Element representative;  ///< cocycle supported on degree-j monomials
  std::vector<Monomial> monomials;
  std::vector<QVector> coordinates;

  bool is_zero() const {
    for (const auto& c : coordinates)
      if (!defo::is_zero(c)) return false;
    return true;
  }
};

namespace detail {

inline void require_layer(const NilpotentDGLA& L, const Element& e, int j, const char* what) {
  if (!(L.layer(e, j) == e)) throw InternalError(std::string(what) + " is not supported on degree-" + std::to_string(j) + " monomials");
}

inline ObstructionClass layer_class(const NilpotentDGLA& Lj, const Element& rep, int degree, ObstructionLevel level) {
  const int j = Lj.order();
  require_layer(Lj, rep, j, "obstruction representative");
  const auto& H = Lj.g().cohomology(degree);
  ObstructionClass c;
  c.level = level;
  c.order = j;
  c.degree = degree;
  c.representative = rep;
  const auto& ctx = *Lj.context();
  for (std::size_t m = ctx.layer_begin(j); m < ctx.layer_end(j); ++m) {
    QVector z = Lj.slice(rep, m);
    if (!H.is_cocycle(z)) throw InternalError("obstruction representative is not a cocycle");
    c.monomials.push_back(ctx.monomial(m));
    c.coordinates.push_back(H.class_of(z));
    // Exactness check through an independent route: zero class <=> coboundary.
    if (defo::is_zero(c.coordinates.back()) != in_span(z, H.coboundaries))
      throw InternalError("class map disagrees with coboundary test");
  }
  return c;
}

inline void require_mc(const NilpotentDGLA& L, const Element& w, const char* what) {
  L.check_shape(w);
  if (w.degree != 1 || !is_mc(L, w)) throw PreconditionError(std::string(what) + " is not a Maurer-Cartan element");
}

}  // namespace detail

/// Obstruction to lifting an MC element of order j-1 to order j: the class of curv(lift) in
/// n_j (x) H^2(g). `lift` is any element of L_j = Lj reducing to an MC element of order j-1.
inline ObstructionClass o2(const NilpotentDGLA& Lj, const Element& lift) {
  const int j = Lj.order();
  if (j < 1) throw PreconditionError("o2 needs order >= 1");
  auto lower = Lj.truncated(j - 1);
  detail::require_mc(lower, Lj.project(lift, lower), "reduction of the lift");
  return detail::layer_class(Lj, curvature(Lj, lift), 2, ObstructionLevel::O2);
}

/// o2 evaluated on the zero-padded lift of an order-(j-1) MC element.
inline ObstructionClass o2_of(const NilpotentDGLA& Lj, const NilpotentDGLA& lower, const Element& w) {
  return o2(Lj, Lj.embed(w, lower));
}

/// Lifts an MC element of order j-1 (living in `lower`) to order j by solving
/// d(beta) = -curv(padded lift) on each degree-j monomial. A preferred correction (a cocycle
/// supported on degree-j monomials) is added to the particular solution. nullopt if unsolvable.
inline std::optional<Element> lift_mc_one_order(const NilpotentDGLA& Lj, const NilpotentDGLA& lower, const Element& w,
                                                const std::optional<Element>& correction = std::nullopt) {
  const int j = Lj.order();
  if (lower.order() != j - 1) throw PreconditionError("lift_mc_one_order: orders are not consecutive");
  detail::require_mc(lower, w, "input");
  Element lift = Lj.embed(w, lower);
  Element cur = curvature(Lj, lift);
  detail::require_layer(Lj, cur, j, "curvature of padded lift");
  const QMatrix& d1 = Lj.g().d_matrix(1);
  const auto& ctx = *Lj.context();
  Element beta = Lj.zero(1);
  for (std::size_t m = ctx.layer_begin(j); m < ctx.layer_end(j); ++m) {
    QVector rhs = scaled(Lj.slice(cur, m), Rational(-1));
    if (Lj.g().dim(1) == 0) {
      if (!defo::is_zero(rhs)) return std::nullopt;
      continue;
    }
    auto x = solve(d1, rhs);
    if (!x) return std::nullopt;
    Lj.set_slice(beta, m, *x);
  }
  Element out = lift + beta;
  if (correction) {
    Lj.check_shape(*correction);
    if (correction->degree != 1 || !(Lj.layer(*correction, j) == *correction) || !Lj.d(*correction).is_zero())
      throw PreconditionError("preferred correction must be a degree-1 cocycle on degree-j monomials");
    out += *correction;
  }
  check(is_mc(Lj, out), "lift_mc_one_order produced a non-MC element");
  return out;
}

/// Obstruction to gauge-connecting two MC elements of order j that agree modulo m^j:
/// the class of w - w' in n_j (x) H^1(g).
inline ObstructionClass o1(const NilpotentDGLA& Lj, const Element& w, const Element& w2) {
  detail::require_mc(Lj, w, "first argument");
  detail::require_mc(Lj, w2, "second argument");
  Element diff = w - w2;
  if (!(Lj.layer(diff, Lj.order()) == diff)) throw PreconditionError("o1: elements differ below the top order");
  return detail::layer_class(Lj, diff, 1, ObstructionLevel::O1);
}

/// Gauge element exp(gamma), gamma supported on degree-j monomials, with Af(exp gamma)(w) = w'.
/// Since m n_j = 0 the equation is linear: d(gamma) = w - w'.
inline std::optional<GaugeElement> connect_one_order(const NilpotentDGLA& Lj, const Element& w, const Element& w2) {
  detail::require_mc(Lj, w, "first argument");
  detail::require_mc(Lj, w2, "second argument");
  const int j = Lj.order();
  Element diff = w - w2;
  if (!(Lj.layer(diff, j) == diff)) throw PreconditionError("connect_one_order: elements differ below the top order");
  const QMatrix& d0 = Lj.g().d_matrix(0);
  const auto& ctx = *Lj.context();
  GaugeElement g{Lj.zero(0)};
  for (std::size_t m = ctx.layer_begin(j); m < ctx.layer_end(j); ++m) {
    QVector rhs = Lj.slice(diff, m);
    if (Lj.g().dim(0) == 0) {
      if (!defo::is_zero(rhs)) return std::nullopt;
      continue;
    }
    auto x = solve(d0, rhs);
    if (!x) return std::nullopt;
    Lj.set_slice(g.log, m, *x);
  }
  check(af_action(Lj, g, w) == w2, "connect_one_order: gauge does not connect");
  return g;
}

/// g, g' in G(w, w'') define the same reduced morphism iff g'^{-1} g lies in
/// exp(d_w(m (x) g^{-1})), i.e. bch(-log g', log g) is in the image of d_w on degree -1.
inline bool reduced_equal(const NilpotentDGLA& L, const GaugeElement& g, const GaugeElement& g2, const Element& w) {
  detail::require_mc(L, w, "base point");
  if (!(af_action(L, g, w) == af_action(L, g2, w)))
    throw PreconditionError("reduced_equal: gauge elements have different targets");
  Element k = bch(L, -g2.log, g.log);
  if (k.is_zero()) return true;
  if (L.dim(-1) == 0) return false;
  QMatrix dm = L.matrix_of(-1, 0, [&](const Element& a) { return twisted_d(L, w, a); });
  return solve(dm, k.coeffs).has_value();
}

/// A gauge element read as a morphism of the reduced groupoid from `source` to Af(g)(source).
struct ReducedHomWitness {
  Element source;
  GaugeElement representative;
};

/// exp of a basis of the twisted H^0 at w: representatives of the reduced automorphisms of w.
inline std::vector<GaugeElement> stabilizer_exp(const NilpotentDGLA& L, const Element& w) {
  detail::require_mc(L, w, "base point");
  TwistedComplex tc(L, w);
  auto H0 = tc.cohomology(0);
  std::vector<GaugeElement> out;
  for (const auto& r : H0.representatives) {
    GaugeElement g{L.from_vector(0, r)};
    check(af_action(L, g, w) == w, "twisted 0-cocycle does not stabilise the base point");
    out.push_back(std::move(g));
  }
  return out;
}

struct Connectivity {
  enum class Kind { Connected, Obstructed, Inconclusive };
  Kind kind = Kind::Connected;
  int order = 0;  ///< order where the search stopped (Obstructed / Inconclusive)
  std::optional<GaugeElement> witness;
  std::optional<ObstructionClass> obstruction;
};

namespace detail {
inline QVector flatten(const ObstructionClass& c) {
  QVector out;
  for (const auto& v : c.coordinates) out.insert(out.end(), v.begin(), v.end());
  return out;
}
}  // namespace detail

/// Builds a connecting gauge order by order. When the lifted gauge leaves a nonzero o1 at
/// order j, the order-(j-1) gauge is corrected by the stabiliser exp(Z^0_w) of the reduction of w:
/// s -> class(Af(s)w - w) is a homomorphism into n_j (x) H^1(g) whose image is spanned by the
/// images of exp(t z) for a basis z of Z^0_w, so one linear solve decides the order.
/// Obstructed therefore means no gauge element connects w and w' at that order.
inline Connectivity connect_greedy(const NilpotentDGLA& L, const Element& w, const Element& w2) {
  detail::require_mc(L, w, "first argument");
  detail::require_mc(L, w2, "second argument");
  NilpotentDGLA prev = L.truncated(0);
  GaugeElement g{prev.zero(0)};
  for (int j = 1; j <= L.order(); ++j) {
    NilpotentDGLA Lj = L.truncated(j);
    Element wj = L.project(w, Lj), w2j = L.project(w2, Lj);
    GaugeElement lifted{Lj.embed(g.log, prev)};
    ObstructionClass cls = o1(Lj, af_action(Lj, lifted, wj), w2j);
    if (!cls.is_zero() && j > 1) {
      Element wp = L.project(w, prev);
      auto Z = kernel_basis(TwistedComplex(prev, wp).d(0));
      std::vector<QVector> images;
      for (const auto& z : Z) {
        GaugeElement s{Lj.embed(prev.from_vector(0, z), prev)};
        images.push_back(detail::flatten(o1(Lj, af_action(Lj, s, wj), wj)));
      }
      std::optional<QVector> c;
      if (!images.empty()) c = solve(QMatrix::from_columns(images[0].size(), images), scaled(detail::flatten(cls), Rational(-1)));
      if (c) {
        for (std::size_t i = 0; i < Z.size(); ++i)
          if (sgn((*c)[i]) != 0) g = gauge_compose(prev, g, GaugeElement{prev.from_vector(0, scaled(Z[i], (*c)[i]))});
        lifted = GaugeElement{Lj.embed(g.log, prev)};
        cls = o1(Lj, af_action(Lj, lifted, wj), w2j);
        check(cls.is_zero(), "stabiliser correction did not clear o1");
      }
    }
    if (!cls.is_zero()) {
      Connectivity c;
      c.kind = Connectivity::Kind::Obstructed;
      c.order = j;
      c.obstruction = std::move(cls);
      return c;
    }
    auto step = connect_one_order(Lj, af_action(Lj, lifted, wj), w2j);
    check(step.has_value(), "o1 vanishes but connect_one_order failed");
    g = gauge_compose(Lj, *step, lifted);
    prev = Lj;
  }
  check(af_action(L, g, w) == w2, "connect_greedy witness does not connect");
  Connectivity c;
  c.kind = Connectivity::Kind::Connected;
  c.order = L.order();
  c.witness = g;
  return c;
}

/// Matrix of 1 (x) phi : m (x) g^i -> m (x) h^i.
inline QMatrix morphism_matrix(const DGLAMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh, int i) {
  const std::size_t M = Lg.monomials();
  QMatrix c = f.component(i);
  QMatrix out(Lh.dim(i), Lg.dim(i));
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t s = 0; s < c.cols(); ++s)
      if (sgn(c(r, s)) != 0)
        for (std::size_t m = 0; m < M; ++m) out(r * M + m, s * M + m) = c(r, s);
  return out;
}

inline GaugeElement apply_morphism(const DGLAMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh, const GaugeElement& g) {
  return {apply_morphism(f, Lg, Lh, g.log)};
}

struct TransferResult {
  Element omega;  ///< MC element of m (x) g
  GaugeElement h; ///< Af(h)(phi(omega)) = chi
};

namespace detail {
inline void require_quasi_iso(const DGLAMorphism& f) {
  auto rep = is_quasi_iso(f);
  if (!rep.ok()) {
    std::string s;
    for (const auto& e : rep.degrees)
      if (!e.bijective) s += " H^" + std::to_string(e.degree);
    throw PreconditionError("morphism is not a quasi-isomorphism (fails on" + s + ")");
  }
}
}  // namespace detail

/// Given a quasi-isomorphism phi: g -> h and an MC element chi of m (x) h, constructs an MC
/// element omega of m (x) g and h with Af(h)(phi(omega)) = chi, one order at a time.
inline TransferResult transfer_mc(const DGLAMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh, const Element& chi) {
  detail::require_quasi_iso(f);
  require_same_context(*Lg.context(), *Lh.context());
  detail::require_mc(Lh, chi, "chi");
  const auto& H1g = f.source()->cohomology(1);
  const auto& H1h = f.target()->cohomology(1);
  const QMatrix h1 = induced_map(H1g, H1h, f.component(1));

  NilpotentDGLA pg = Lg.truncated(0), ph = Lh.truncated(0);
  Element omega = pg.zero(1);
  GaugeElement h{ph.zero(0)};
  for (int j = 1; j <= Lg.order(); ++j) {
    NilpotentDGLA gj = Lg.truncated(j), hj = Lh.truncated(j);
    Element chi_j = Lh.project(chi, hj);
    GaugeElement h1_lift{hj.embed(h.log, ph)};
    Element chi1 = af_action(hj, gauge_inverse(h1_lift), chi_j);
    check(hj.project(chi1, ph) == apply_morphism(f, pg, ph, omega), "pulled-back target does not reduce to phi(omega)");

    if (!o2_of(gj, pg, omega).is_zero()) throw InternalError("o2 nonzero although H^2(phi) is injective");
    auto omega2 = lift_mc_one_order(gj, pg, omega);
    check(omega2.has_value(), "vanishing o2 but no lift");

    Element chi2 = apply_morphism(f, gj, hj, *omega2);
    ObstructionClass c = o1(hj, chi2, chi1);
    Element gamma = gj.zero(1);
    for (std::size_t k = 0; k < c.coordinates.size(); ++k) {
      auto x = solve(h1, c.coordinates[k]);
      check(x.has_value(), "H^1(phi) is not surjective on an o1 class");
      std::size_t m = gj.context()->layer_begin(j) + k;
      gj.set_slice(gamma, m, H1g.representative_of(*x));
    }
    Element omega_j = *omega2 - gamma;
    Element chi3 = apply_morphism(f, gj, hj, omega_j);
    check(o1(hj, chi3, chi1).is_zero(), "corrected lift still obstructed");
    auto h3 = connect_one_order(hj, chi3, chi1);
    check(h3.has_value(), "vanishing o1 but no connecting gauge");
    h = gauge_compose(hj, h1_lift, *h3);
    omega = omega_j;
    check(af_action(hj, h, apply_morphism(f, gj, hj, omega)) == chi_j, "transfer invariant fails at order " + std::to_string(j));
    pg = gj;
    ph = hj;
  }
  return {omega, h};
}

/// Given a quasi-isomorphism phi, MC elements w, w' of m (x) g and h in G(phi w, phi w'),
/// constructs g in G(w, w') with phi(g) reduced-equal to h.
inline GaugeElement lift_gauge(const DGLAMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh, const Element& w,
                               const Element& w2, const GaugeElement& h) {
  detail::require_quasi_iso(f);
  require_same_context(*Lg.context(), *Lh.context());
  detail::require_mc(Lg, w, "source");
  detail::require_mc(Lg, w2, "target");
  Lh.check_shape(h.log);
  if (!(af_action(Lh, h, apply_morphism(f, Lg, Lh, w)) == apply_morphism(f, Lg, Lh, w2)))
    throw PreconditionError("lift_gauge: h does not carry phi(w) to phi(w')");

  NilpotentDGLA pg = Lg.truncated(0);
  GaugeElement g{pg.zero(0)};
  for (int j = 1; j <= Lg.order(); ++j) {
    NilpotentDGLA gj = Lg.truncated(j), hj = Lh.truncated(j);
    Element wj = Lg.project(w, gj), w2j = Lg.project(w2, gj);
    GaugeElement hj_gauge{Lh.project(h.log, hj)};
    Element chij = apply_morphism(f, gj, hj, wj);

    GaugeElement g2{gj.embed(g.log, pg)};
    Element moved = af_action(gj, g2, wj);
    check(o1(gj, moved, w2j).is_zero(), "o1 nonzero although H^1(phi) is injective");
    auto g1 = connect_one_order(gj, moved, w2j);
    check(g1.has_value(), "vanishing o1 but no connecting gauge");
    GaugeElement g3 = gauge_compose(gj, *g1, g2);

    // Correct by a stabiliser element so that phi(g) and h agree in the reduced groupoid.
    GaugeElement phig3 = apply_morphism(f, gj, hj, g3);
    Element k = bch(hj, -phig3.log, hj_gauge.log);
    auto H0g = TwistedComplex(gj, wj).cohomology(0);
    auto H0h = TwistedComplex(hj, chij).cohomology(0);
    QMatrix m0 = induced_map(H0g, H0h, morphism_matrix(f, gj, hj, 0));
    auto x = solve(m0, H0h.class_of(k.coeffs));
    check(x.has_value(), "twisted H^0(phi) is not surjective");
    Element kappa = gj.from_vector(0, H0g.representative_of(*x));
    g = gauge_compose(gj, g3, GaugeElement{kappa});
    check(af_action(gj, g, wj) == w2j, "lifted gauge does not connect at order " + std::to_string(j));
    check(reduced_equal(hj, apply_morphism(f, gj, hj, g), hj_gauge, chij),
          "lifted gauge is not reduced-equal to h at order " + std::to_string(j));
    pg = gj;
  }
  return g;
}

}  // namespace defo
