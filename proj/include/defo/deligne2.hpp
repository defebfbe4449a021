#pragma once

#include <memory>
#include <string>
#include <vector>

#include "defo/deligne.hpp"
#include "defo/two_groupoid.hpp"

namespace defo {

/// 1-morphism of the Deligne 2-groupoid: exp(gauge) : source -> Af(exp gauge)(source).
struct DelMor {
  Element source;
  GaugeElement gauge;
};

/// Element of N_w = exp(a_w), stored as the canonical representative in m (x) g^{-1}.
struct DelCell {
  Element base;
  Element alpha;
};

/// Crossed data of the Deligne 2-groupoid of m (x) g. a_w = Coker(d_w : m (x) g^{-2} -> m (x) g^{-1})
/// with bracket [a1, a2]_w = [d_w a1, a2]; N_w uses BCH for that bracket; D_w = exp(d_w);
/// Psi(g) = Ad(g) on cosets. Per-object data is computed on demand and cached (not thread-safe).
class DeligneCrossedData : public std::enable_shared_from_this<DeligneCrossedData> {
 public:
  struct ObjectData {
    Element w;
    QMatrix d_m2;  ///< d_w on degree -2
    QMatrix d_m1;  ///< d_w on degree -1
    QuotientSpace a;
  };

  static std::shared_ptr<const DeligneCrossedData> make(NilpotentDGLA L) {
    return std::shared_ptr<const DeligneCrossedData>(new DeligneCrossedData(std::move(L)));
  }

  const NilpotentDGLA& algebra() const { return L_; }

  const ObjectData& object(const Element& w) const {
    for (const auto& o : cache_)
      if (o->w == w) return *o;
    detail::require_mc(L_, w, "object");
    auto o = std::make_unique<ObjectData>();
    o->w = w;
    o->d_m2 = L_.matrix_of(-2, -1, [&](const Element& a) { return twisted_d(L_, w, a); });
    o->d_m1 = L_.matrix_of(-1, 0, [&](const Element& a) { return twisted_d(L_, w, a); });
    o->a = QuotientSpace(o->d_m2);
    cache_.push_back(std::move(o));
    return *cache_.back();
  }

  Element target(const DelMor& f) const { return af_action(L_, f.gauge, f.source); }
  DelMor identity(const Element& w) const { return {w, gauge_identity(L_)}; }
  DelMor inverse(const DelMor& f) const { return {target(f), gauge_inverse(f.gauge)}; }
  DelMor compose(const DelMor& g, const DelMor& f) const {
    if (!(target(f) == g.source)) throw PreconditionError("compose: morphisms are not composable");
    return {f.source, gauge_compose(L_, g.gauge, f.gauge)};
  }

  DelCell cell(const Element& w, const Element& alpha) const {
    L_.check_shape(alpha);
    if (alpha.degree != -1) throw PreconditionError("N-elements are represented in degree -1");
    return {w, L_.from_vector(-1, object(w).a.canonical(alpha.coeffs))};
  }
  DelCell n_identity(const Element& w) const { return {w, L_.zero(-1)}; }
  DelCell n_inverse(const DelCell& a) const { return cell(a.base, -a.alpha); }

  Element bracket(const Element& w, const Element& a1, const Element& a2) const {
    return L_.bracket(twisted_d(L_, w, a1), a2);
  }
  DelCell n_compose(const DelCell& a, const DelCell& b) const {
    if (!(a.base == b.base)) throw PreconditionError("N-composition across different objects");
    const Element& w = a.base;
    Element z = bch_series(a.alpha, b.alpha, [&](const Element& x, const Element& y) { return bracket(w, x, y); }, L_.order());
    return cell(w, z);
  }

  DelMor feedback(const DelCell& a) const { return {a.base, GaugeElement{twisted_d(L_, a.base, a.alpha)}}; }
  DelCell psi(const DelMor& g, const DelCell& a) const {
    if (!(a.base == g.source)) throw PreconditionError("psi: N-element is not based at the source");
    return cell(target(g), ad_exp(L_, g.gauge, a.alpha));
  }

  std::size_t index_of(const Element& w) const {
    for (std::size_t i = 0; i < cache_.size(); ++i)
      if (cache_[i]->w == w) return i;
    object(w);
    return cache_.size() - 1;
  }

  CrossedGroupoid<Element, DelMor, DelCell> crossed() const {
    auto self = shared_from_this();
    CrossedGroupoid<Element, DelMor, DelCell> c;
    c.source = [](const DelMor& f) { return f.source; };
    c.target = [self](const DelMor& f) { return self->target(f); };
    c.compose = [self](const DelMor& g, const DelMor& f) { return self->compose(g, f); };
    c.identity = [self](const Element& w) { return self->identity(w); };
    c.inverse = [self](const DelMor& f) { return self->inverse(f); };
    c.obj_equal = [](const Element& a, const Element& b) { return a == b; };
    c.mor_equal = [](const DelMor& a, const DelMor& b) { return a.source == b.source && a.gauge == b.gauge; };
    c.base = [](const DelCell& a) { return a.base; };
    c.n_compose = [self](const DelCell& a, const DelCell& b) { return self->n_compose(a, b); };
    c.n_identity = [self](const Element& w) { return self->n_identity(w); };
    c.n_inverse = [self](const DelCell& a) { return self->n_inverse(a); };
    c.cell_equal = [](const DelCell& a, const DelCell& b) { return a.base == b.base && a.alpha == b.alpha; };
    c.psi = [self](const DelMor& g, const DelCell& a) { return self->psi(g, a); };
    c.feedback = [self](const DelCell& a) { return self->feedback(a); };
    c.describe_mor = [self](const DelMor& f) {
      return "exp(" + self->L_.to_string(f.gauge.log) + ") from object " + std::to_string(self->index_of(f.source));
    };
    c.describe_cell = [self](const DelCell& a) {
      return "exp(" + self->L_.to_string(a.alpha) + ") at object " + std::to_string(self->index_of(a.base));
    };
    return c;
  }

  /// D_{w'} o Psi(g) = Ad(g) o D_w, and D_w lands in the stabiliser of w.
  Report check_commuting_square(const std::vector<DelMor>& mors, const std::vector<DelCell>& cells) const {
    auto c = crossed();
    Report r;
    for (const auto& a : cells)
      r.add("feedback stabilises", c.describe_cell(a), af_action(L_, feedback(a).gauge, a.base) == a.base);
    for (const auto& g : mors)
      for (const auto& a : cells) {
        if (!(a.base == g.source)) continue;
        Element lhs = feedback(psi(g, a)).gauge.log;
        Element rhs = ad_exp(L_, g.gauge, feedback(a).gauge.log);
        r.add("commuting square", c.describe_mor(g) + "; " + c.describe_cell(a), lhs == rhs);
      }
    return r;
  }

  /// Jacobi for [-,-]_w on cosets, and [a, d_w b]_w = d_w(c) for b in degree -2 with c found by
  /// a linear solve.
  Report check_bracket(const Element& w, const std::vector<Element>& alphas, const std::vector<Element>& betas) const {
    const auto& o = object(w);
    Report r;
    auto canon = [&](const Element& x) { return L_.from_vector(-1, o.a.canonical(x.coeffs)); };
    auto br = [&](const Element& x, const Element& y) { return bracket(w, x, y); };
    for (const auto& x : alphas)
      for (const auto& y : alphas)
        for (const auto& z : alphas) {
          Element jac = br(x, br(y, z)) - br(br(x, y), z) - br(y, br(x, z));
          r.add("induced Jacobi", "object " + std::to_string(index_of(w)), canon(jac).is_zero(), L_.to_string(jac));
        }
    for (const auto& x : alphas) {
      for (const auto& y : alphas)
        r.add("induced antisymmetry", "object " + std::to_string(index_of(w)), canon(br(x, y) + br(y, x)).is_zero());
      for (const auto& b : betas) {
        Element v = br(x, twisted_d(L_, w, b));
        bool ok = v.is_zero();
        if (!ok && o.d_m2.cols() > 0) {
          auto pre = solve(o.d_m2, v.coeffs);
          ok = pre && twisted_d(L_, w, L_.from_vector(-2, *pre)) == v;
        }
        r.add("bracket with boundary is boundary", "object " + std::to_string(index_of(w)), ok, L_.to_string(v));
      }
    }
    return r;
  }

  struct Pi2 {
    std::size_t dimension = 0;       ///< dim Ker(D_w) on a_w
    std::size_t h_minus1 = 0;        ///< dim H^{-1} of the twisted complex
    std::vector<DelCell> basis;
    Report checks;
  };

  /// Ker(D_w), computed on coset coordinates, compared with the twisted H^{-1}.
  Pi2 pi2(const Element& w) const {
    const auto& o = object(w);
    Pi2 p;
    std::vector<QVector> cols;
    for (std::size_t k = 0; k < o.a.dimension(); ++k) {
      QVector e(o.a.dimension());
      e[k] = 1;
      cols.push_back(o.d_m1.apply(o.a.from_coordinates(e)));
    }
    QMatrix dm = QMatrix::from_columns(L_.dim(0), cols);
    for (const auto& k : kernel_basis(dm)) p.basis.push_back({w, L_.from_vector(-1, o.a.from_coordinates(k))});
    p.dimension = p.basis.size();
    p.h_minus1 = TwistedComplex(L_, w).cohomology(-1).dimension();
    std::string s = "object " + std::to_string(index_of(w));
    p.checks.add("pi2 dimension equals H^-1", s, p.dimension == p.h_minus1,
                 std::to_string(p.dimension) + " vs " + std::to_string(p.h_minus1));
    for (const auto& a : p.basis) {
      p.checks.add("pi2 basis in kernel of D", s, feedback(a).gauge.log.is_zero());
      for (const auto& b : p.basis) {
        DelCell comm = n_compose(n_compose(a, b), n_compose(n_inverse(a), n_inverse(b)));
        p.checks.add("pi2 abelian", s, comm.alpha.is_zero());
      }
    }
    return p;
  }

  /// exp of a basis of the twisted H^0: the reduced automorphism group at w.
  std::vector<GaugeElement> pi1(const Element& w) const { return stabilizer_exp(L_, w); }

  /// Psi(g) maps Ker(D_w) isomorphically onto Ker(D_{w'}).
  Report check_pi2_transport(const DelMor& g) const {
    Report r;
    auto src = pi2(g.source), tgt = pi2(target(g));
    const auto& ot = object(target(g));
    std::vector<QVector> imgs;
    bool in_kernel = true;
    for (const auto& a : src.basis) {
      DelCell b = psi(g, a);
      in_kernel = in_kernel && feedback(b).gauge.log.is_zero();
      imgs.push_back(ot.a.coordinates(b.alpha.coeffs));
    }
    std::size_t rk = imgs.empty() ? 0 : rank(QMatrix::from_columns(ot.a.dimension(), imgs));
    std::string s = "object " + std::to_string(index_of(g.source)) + " -> " + std::to_string(index_of(target(g)));
    r.add("pi2 transport lands in kernel", s, in_kernel);
    r.add("pi2 transport is bijective", s, rk == src.dimension && src.dimension == tgt.dimension);
    return r;
  }

 private:
  explicit DeligneCrossedData(NilpotentDGLA L) : L_(std::move(L)) {}

  NilpotentDGLA L_;
  mutable std::vector<std::unique_ptr<ObjectData>> cache_;
};

using DeligneTwoGroupoid = TwoGroupoid<Element, DelMor, DelCell>;

/// Evidence that 1 (x) phi induces a weak equivalence of Deligne 2-groupoids: on each sample w,
/// the maps on twisted H^{-1} (pi_2) and H^0 (pi_1) are bijective; transfer_mc pulls phi(w) back
/// to some w~ and lift_gauge connects w~ to w (pi_0). Targets in `target_samples` are transferred.
inline Report weak_equiv_evidence(const DGLAMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh,
                                  const std::vector<Element>& samples, const std::vector<Element>& target_samples = {}) {
  detail::require_quasi_iso(f);
  Report r;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Element& w = samples[i];
    std::string s = "sample " + std::to_string(i);
    detail::require_mc(Lg, w, s.c_str());
    Element pw = apply_morphism(f, Lg, Lh, w);
    TwistedComplex tg(Lg, w), th(Lh, pw);
    for (int deg : {-1, 0}) {
      auto Hg = tg.cohomology(deg), Hh = th.cohomology(deg);
      bool bij = is_bijective(induced_map(Hg, Hh, morphism_matrix(f, Lg, Lh, deg)));
      r.add(deg == -1 ? "pi2: H^-1 map bijective" : "pi1: H^0 map bijective", s, bij,
            std::to_string(Hg.dimension()) + " vs " + std::to_string(Hh.dimension()));
    }
    auto t = transfer_mc(f, Lg, Lh, pw);
    bool transferred = af_action(Lh, t.h, apply_morphism(f, Lg, Lh, t.omega)) == pw;
    r.add("pi0: transfer of phi(w)", s, transferred);
    GaugeElement g = lift_gauge(f, Lg, Lh, t.omega, w, t.h);
    r.add("pi0: transferred element connects back", s, af_action(Lg, g, t.omega) == w);
  }
  for (std::size_t i = 0; i < target_samples.size(); ++i) {
    std::string s = "target sample " + std::to_string(i);
    auto t = transfer_mc(f, Lg, Lh, target_samples[i]);
    r.add("pi0: surjectivity witness", s,
          is_mc(Lg, t.omega) && af_action(Lh, t.h, apply_morphism(f, Lg, Lh, t.omega)) == target_samples[i]);
  }
  return r;
}

}  // namespace defo
