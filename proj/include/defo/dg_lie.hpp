#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "defo/cohomology.hpp"
#include "defo/graded_space.hpp"
#include "defo/qmatrix.hpp"

namespace defo {

using Term = std::pair<std::string, Rational>;
using SparseVec = std::vector<std::pair<int, Rational>>;  ///< (local index in target degree, coefficient)

inline int koszul(int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; }
inline int parity_sign(int a) { return a % 2 == 0 ? 1 : -1; }

/// Presentation of a DG Lie algebra as it appears in files: a basis per degree, the
/// differential on basis vectors, and bracket values on ordered basis pairs. Nothing is
/// checked; see validate_dgla.
struct DGLieData {
  std::map<int, std::vector<std::string>> degrees;
  std::vector<std::pair<std::string, std::vector<Term>>> differential;
  std::vector<std::pair<std::pair<std::string, std::string>, std::vector<Term>>> bracket;
};

struct Violation {
  std::string axiom;  ///< structure | d_squared | antisymmetry | jacobi | leibniz | chain_map | bracket
  std::vector<std::string> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& axiom) const {
    for (const auto& v : violations)
      if (v.axiom == axiom) return true;
    return false;
  }
  std::string summary() const {
    std::string s;
    for (const auto& v : violations) {
      s += v.axiom + " at (";
      for (std::size_t i = 0; i < v.witness.size(); ++i) s += (i ? "," : "") + v.witness[i];
      s += ")";
      if (!v.detail.empty()) s += ": " + v.detail;
      s += "\n";
    }
    return s;
  }
};

namespace detail {

/// Full operation tables resolved from a presentation. Bracket entries not given are
/// derived from the mirrored pair by graded antisymmetry.
struct ResolvedTables {
  GradedSpace space;
  std::vector<SparseVec> d;                     // by global index
  std::vector<std::vector<SparseVec>> bracket;  // [x][y], both global
  std::map<std::pair<int, int>, SparseVec> raw;  // as given
};

inline SparseVec to_sparse(const GradedSpace& s, const std::vector<Term>& terms, int want_degree,
                           std::vector<Violation>& out, const std::vector<std::string>& witness) {
  std::map<int, Rational> acc;
  for (const auto& [n, c] : terms) {
    auto f = s.find(n);
    if (!f) {
      out.push_back({"structure", witness, "unknown basis name '" + n + "'"});
      continue;
    }
    if (f->first != want_degree) {
      out.push_back({"structure", witness, "term '" + n + "' has degree " + std::to_string(f->first) +
                                               ", expected " + std::to_string(want_degree)});
      continue;
    }
    acc[f->second] += c;
  }
  SparseVec v;
  for (auto& [i, c] : acc)
    if (sgn(c) != 0) v.emplace_back(i, c);
  return v;
}

inline ResolvedTables resolve(const DGLieData& data, std::vector<Violation>& out) {
  ResolvedTables t{GradedSpace(data.degrees), {}, {}, {}};
  const auto& s = t.space;
  const int n = static_cast<int>(s.total_dim());
  t.d.assign(n, {});
  t.bracket.assign(n, std::vector<SparseVec>(n));
  std::set<int> seen_d;
  for (const auto& [src, terms] : data.differential) {
    auto f = s.find(src);
    if (!f) {
      out.push_back({"structure", {src}, "unknown basis name in differential"});
      continue;
    }
    int g = s.global(f->first, f->second);
    if (!seen_d.insert(g).second) out.push_back({"structure", {src}, "differential given twice"});
    t.d[g] = to_sparse(s, terms, f->first + 1, out, {src});
  }
  for (const auto& [pair, terms] : data.bracket) {
    auto fa = s.find(pair.first), fb = s.find(pair.second);
    if (!fa || !fb) {
      out.push_back({"structure", {pair.first, pair.second}, "unknown basis name in bracket"});
      continue;
    }
    int a = s.global(fa->first, fa->second), b = s.global(fb->first, fb->second);
    if (t.raw.count({a, b})) out.push_back({"structure", {pair.first, pair.second}, "bracket given twice"});
    t.raw[{a, b}] = to_sparse(s, terms, fa->first + fb->first, out, {pair.first, pair.second});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto it = t.raw.find({a, b});
      if (it != t.raw.end()) {
        t.bracket[a][b] = it->second;
        continue;
      }
      auto jt = t.raw.find({b, a});
      if (jt == t.raw.end()) continue;
      int sign = -koszul(s.degree_of(a), s.degree_of(b));
      for (const auto& [i, c] : jt->second) t.bracket[a][b].emplace_back(i, c * sign);
    }
  return t;
}

inline QVector dense(const SparseVec& v, std::size_t n) {
  QVector out(n);
  for (const auto& [i, c] : v) out[i] += c;
  return out;
}

}  // namespace detail

/// A validated finite-dimensional DG Lie algebra over Q.
class DGLieAlgebra {
 public:
  /// Validates exhaustively; throws PreconditionError listing every violation.
  static std::shared_ptr<const DGLieAlgebra> make(const DGLieData& data);

  const GradedSpace& space() const { return t_.space; }
  std::size_t dim(int d) const { return t_.space.dim(d); }
  int min_degree() const { return t_.space.min_degree(); }
  int max_degree() const { return t_.space.max_degree(); }

  /// d restricted to degree i, as a dim(i+1) x dim(i) matrix.
  const QMatrix& d_matrix(int i) const {
    auto it = d_mats_.find(i);
    return it != d_mats_.end() ? it->second : empty_matrix_;
  }
  const SparseVec& d_of(int global) const { return t_.d[global]; }
  const SparseVec& bracket_of(int gx, int gy) const { return t_.bracket[gx][gy]; }

  QVector d(int deg, const QVector& v) const { return d_matrix(deg).apply(v); }

  QVector bracket(int p, const QVector& a, int q, const QVector& b) const {
    QVector out(dim(p + q));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (sgn(a[i]) == 0) continue;
      int gx = t_.space.global(p, static_cast<int>(i));
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (sgn(b[j]) == 0) continue;
        int gy = t_.space.global(q, static_cast<int>(j));
        for (const auto& [k, c] : t_.bracket[gx][gy]) out[k] += c * a[i] * b[j];
      }
    }
    return out;
  }

  bool is_abelian() const {
    for (const auto& row : t_.bracket)
      for (const auto& v : row)
        if (!v.empty()) return false;
    return true;
  }

  /// H^i(g); zero space outside the degree window.
  const CohomologySpace& cohomology(int i) const {
    auto it = coh_.find(i);
    return it != coh_.end() ? it->second : empty_cohomology_;
  }

  /// Canonical presentation: nonzero differentials, brackets only on pairs x <= y (global order).
  DGLieData data() const {
    DGLieData out;
    out.degrees = t_.space.all_names();
    const auto& s = t_.space;
    for (int g = 0; g < static_cast<int>(s.total_dim()); ++g) {
      if (t_.d[g].empty()) continue;
      std::vector<Term> terms;
      for (const auto& [i, c] : t_.d[g]) terms.emplace_back(s.name(s.degree_of(g) + 1, i), c);
      out.differential.emplace_back(s.name_of(g), terms);
    }
    for (int a = 0; a < static_cast<int>(s.total_dim()); ++a)
      for (int b = a; b < static_cast<int>(s.total_dim()); ++b) {
        if (t_.bracket[a][b].empty()) continue;
        std::vector<Term> terms;
        for (const auto& [i, c] : t_.bracket[a][b])
          terms.emplace_back(s.name(s.degree_of(a) + s.degree_of(b), i), c);
        out.bracket.push_back({{s.name_of(a), s.name_of(b)}, terms});
      }
    return out;
  }

  bool operator==(const DGLieAlgebra& o) const {
    return t_.space == o.t_.space && t_.d == o.t_.d && t_.bracket == o.t_.bracket;
  }

 private:
  explicit DGLieAlgebra(detail::ResolvedTables t) : t_(std::move(t)) {
    const auto& s = t_.space;
    if (s.empty()) return;
    for (int i = s.min_degree() - 1; i <= s.max_degree(); ++i) {
      QMatrix m(s.dim(i + 1), s.dim(i));
      for (std::size_t j = 0; j < s.dim(i); ++j)
        for (const auto& [k, c] : t_.d[s.global(i, static_cast<int>(j))]) m(k, j) += c;
      d_mats_.emplace(i, std::move(m));
    }
    for (int i = s.min_degree(); i <= s.max_degree(); ++i)
      coh_.emplace(i, compute_cohomology(i, s.dim(i), d_matrix(i - 1), d_matrix(i)));
  }

  detail::ResolvedTables t_;
  std::map<int, QMatrix> d_mats_;
  std::map<int, CohomologySpace> coh_;
  QMatrix empty_matrix_;
  CohomologySpace empty_cohomology_;
};

using DGLAPtr = std::shared_ptr<const DGLieAlgebra>;

/// Checks d^2 = 0, graded antisymmetry, graded Jacobi and the Leibniz rule on all basis
/// tuples. Every violation is reported with the offending basis tuple.
inline ValidationReport validate_dgla(const DGLieData& data) {
  ValidationReport rep;
  detail::ResolvedTables t;
  try {
    t = detail::resolve(data, rep.violations);
  } catch (const ParseError& e) {
    rep.violations.push_back({"structure", {}, e.what()});
    return rep;
  }
  const auto& s = t.space;
  const int n = static_cast<int>(s.total_dim());
  auto deg = [&](int g) { return s.degree_of(g); };
  auto name = [&](int g) { return s.name_of(g); };

  // Operations on vectors in the global basis.
  auto apply_d = [&](const QVector& v) {
    QVector out(n);
    for (int g = 0; g < n; ++g) {
      if (sgn(v[g]) == 0) continue;
      for (const auto& [i, c] : t.d[g]) out[s.global(deg(g) + 1, i)] += c * v[g];
    }
    return out;
  };
  auto br = [&](const QVector& a, const QVector& b) {
    QVector out(n);
    for (int x = 0; x < n; ++x) {
      if (sgn(a[x]) == 0) continue;
      for (int y = 0; y < n; ++y) {
        if (sgn(b[y]) == 0) continue;
        for (const auto& [i, c] : t.bracket[x][y]) out[s.global(deg(x) + deg(y), i)] += c * a[x] * b[y];
      }
    }
    return out;
  };
  auto unit = [&](int g) {
    QVector v(n);
    v[g] = 1;
    return v;
  };

  for (int x = 0; x < n; ++x)
    if (!is_zero(apply_d(apply_d(unit(x))))) rep.violations.push_back({"d_squared", {name(x)}, "d(d(x)) != 0"});

  for (const auto& [pair, vals] : t.raw) {
    auto [a, b] = pair;
    if (a > b) continue;
    auto it = t.raw.find({b, a});
    QVector sum = detail::dense(vals, s.dim(deg(a) + deg(b)));
    if (a == b) {
      sum = add(sum, sum);
      if (koszul(deg(a), deg(a)) < 0) continue;
    } else {
      if (it == t.raw.end()) continue;
      sum = add(sum, scaled(detail::dense(it->second, sum.size()), koszul(deg(a), deg(b))));
    }
    if (!is_zero(sum))
      rep.violations.push_back({"antisymmetry", {name(a), name(b)}, "[x,y] != -(-1)^{|x||y|}[y,x]"});
  }

  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      for (int z = y; z < n; ++z) {
        QVector ex = unit(x), ey = unit(y), ez = unit(z);
        QVector j = scaled(br(ex, br(ey, ez)), koszul(deg(x), deg(z)));
        j = add(j, scaled(br(ey, br(ez, ex)), koszul(deg(y), deg(x))));
        j = add(j, scaled(br(ez, br(ex, ey)), koszul(deg(z), deg(y))));
        if (!is_zero(j)) rep.violations.push_back({"jacobi", {name(x), name(y), name(z)}, "graded Jacobi fails"});
      }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      QVector ex = unit(x), ey = unit(y);
      QVector lhs = apply_d(br(ex, ey));
      QVector rhs = add(br(apply_d(ex), ey), scaled(br(ex, apply_d(ey)), parity_sign(deg(x))));
      if (lhs != rhs)
        rep.violations.push_back({"leibniz", {name(x), name(y)}, "d[x,y] != [dx,y] + (-1)^{|x|}[x,dy]"});
    }
  return rep;
}

inline std::shared_ptr<const DGLieAlgebra> DGLieAlgebra::make(const DGLieData& data) {
  auto rep = validate_dgla(data);
  if (!rep.ok()) throw PreconditionError("not a DG Lie algebra:\n" + rep.summary());
  std::vector<Violation> ignore;
  return std::shared_ptr<const DGLieAlgebra>(new DGLieAlgebra(detail::resolve(data, ignore)));
}

/// Strict morphism of DG Lie algebras, given degreewise as dim h^i x dim g^i matrices.
class DGLAMorphism {
 public:
  static ValidationReport check(const DGLAPtr& src, const DGLAPtr& tgt, const std::map<int, QMatrix>& comps) {
    ValidationReport rep;
    const auto& gs = src->space();
    for (const auto& [i, m] : comps)
      if (m.rows() != tgt->dim(i) || m.cols() != src->dim(i))
        rep.violations.push_back({"structure", {std::to_string(i)}, "component has wrong shape"});
    if (!rep.ok()) return rep;
    DGLAMorphism f(src, tgt, comps);
    for (int g = 0; g < static_cast<int>(gs.total_dim()); ++g) {
      auto [d, i] = gs.local(g);
      QVector e(src->dim(d));
      e[i] = 1;
      if (tgt->d(d, f.apply(d, e)) != f.apply(d + 1, src->d(d, e)))
        rep.violations.push_back({"chain_map", {gs.name_of(g)}, "d(phi x) != phi(d x)"});
    }
    for (int a = 0; a < static_cast<int>(gs.total_dim()); ++a)
      for (int b = a; b < static_cast<int>(gs.total_dim()); ++b) {
        auto [p, i] = gs.local(a);
        auto [q, j] = gs.local(b);
        QVector x(src->dim(p)), y(src->dim(q));
        x[i] = 1;
        y[j] = 1;
        if (f.apply(p + q, src->bracket(p, x, q, y)) != tgt->bracket(p, f.apply(p, x), q, f.apply(q, y)))
          rep.violations.push_back({"bracket", {gs.name_of(a), gs.name_of(b)}, "phi[x,y] != [phi x, phi y]"});
      }
    return rep;
  }

  static std::shared_ptr<const DGLAMorphism> make(DGLAPtr src, DGLAPtr tgt, std::map<int, QMatrix> comps) {
    auto rep = check(src, tgt, comps);
    if (!rep.ok()) throw PreconditionError("not a DGLA morphism:\n" + rep.summary());
    return std::shared_ptr<const DGLAMorphism>(new DGLAMorphism(std::move(src), std::move(tgt), std::move(comps)));
  }

  const DGLAPtr& source() const { return src_; }
  const DGLAPtr& target() const { return tgt_; }

  /// Component in degree i (a zero matrix if none was given).
  QMatrix component(int i) const {
    auto it = comps_.find(i);
    return it == comps_.end() ? QMatrix(tgt_->dim(i), src_->dim(i)) : it->second;
  }
  const std::map<int, QMatrix>& components() const { return comps_; }

  QVector apply(int i, const QVector& v) const {
    auto it = comps_.find(i);
    if (it == comps_.end()) return QVector(tgt_->dim(i));
    return it->second.apply(v);
  }

 private:
  DGLAMorphism(DGLAPtr s, DGLAPtr t, std::map<int, QMatrix> c)
      : src_(std::move(s)), tgt_(std::move(t)), comps_(std::move(c)) {}
  DGLAPtr src_, tgt_;
  std::map<int, QMatrix> comps_;
};

using MorphismPtr = std::shared_ptr<const DGLAMorphism>;

struct QuasiIsoReport {
  struct Entry {
    int degree;
    std::size_t source_dim, target_dim, rank;
    bool bijective;
  };
  std::vector<Entry> degrees;
  bool ok() const {
    for (const auto& e : degrees)
      if (!e.bijective) return false;
    return true;
  }
};

/// H^i(phi) on every degree where either side is nonzero.
inline QuasiIsoReport is_quasi_iso(const DGLAMorphism& f) {
  QuasiIsoReport rep;
  const auto& g = *f.source();
  const auto& h = *f.target();
  std::set<int> window;
  for (const auto* a : {&g, &h})
    for (int i = a->min_degree(); i <= a->max_degree(); ++i) window.insert(i);
  for (int i : window) {
    const auto& hs = g.cohomology(i);
    const auto& ht = h.cohomology(i);
    std::size_t r = 0;
    if (hs.dimension() > 0 && ht.dimension() > 0) r = rank(induced_map(hs, ht, f.component(i)));
    rep.degrees.push_back({i, hs.dimension(), ht.dimension(), r, hs.dimension() == ht.dimension() && r == hs.dimension()});
  }
  return rep;
}

/// Quantum type: g^i = 0 for all i < -1. Quasi-quantum type is not decided here; it needs
/// an explicit quasi-isomorphism to an algebra of quantum type (see has_quasi_quantum_witness).
inline bool is_quantum_type(const DGLieAlgebra& g) { return g.space().empty() || g.min_degree() >= -1; }

/// Accepts a user-supplied witness: a quasi-isomorphism from g to an algebra of quantum type.
inline bool has_quasi_quantum_witness(const DGLieAlgebra& g, const DGLAMorphism& witness) {
  return witness.source().get() == &g && is_quantum_type(*witness.target()) && is_quasi_iso(witness).ok();
}

}  // namespace defo
