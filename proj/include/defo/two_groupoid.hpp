#pragma once

#include <functional>
#include <string>
#include <vector>

#include "defo/errors.hpp"
#include "defo/report.hpp"

namespace defo {

/// Crossed groupoid (G, N, Psi, D). Composition in G is written g o f (f first). N(x) is a
/// group at each object; Psi(g): N(source g) -> N(target g); D: N(x) -> G(x, x).
template <class Obj, class Mor, class Cell>
struct CrossedGroupoid {
  std::function<Obj(const Mor&)> source, target;
  std::function<Mor(const Mor& g, const Mor& f)> compose;
  std::function<Mor(const Obj&)> identity;
  std::function<Mor(const Mor&)> inverse;
  std::function<bool(const Obj&, const Obj&)> obj_equal;
  std::function<bool(const Mor&, const Mor&)> mor_equal;

  std::function<Obj(const Cell&)> base;
  std::function<Cell(const Cell& a, const Cell& b)> n_compose;  ///< a o_N b
  std::function<Cell(const Obj&)> n_identity;
  std::function<Cell(const Cell&)> n_inverse;
  std::function<bool(const Cell&, const Cell&)> cell_equal;

  std::function<Cell(const Mor& g, const Cell& a)> psi;
  std::function<Mor(const Cell&)> feedback;

  /// Human-readable sample labels for reports.
  std::function<std::string(const Mor&)> describe_mor = [](const Mor&) { return std::string("morphism"); };
  std::function<std::string(const Cell&)> describe_cell = [](const Cell&) { return std::string("cell"); };

  Mor conjugate(const Mor& g, const Mor& h) const { return compose(compose(g, h), inverse(g)); }
  Cell n_conjugate(const Cell& a, const Cell& b) const { return n_compose(n_compose(a, b), n_inverse(a)); }
};

/// 2-cell a : f => g with f, g : x -> y and g = f o D(a), a in N(x).
template <class Mor, class Cell>
struct TwoCell {
  Mor f, g;
  Cell a;
};

/// Strict 2-groupoid assembled from a crossed groupoid.
template <class Obj, class Mor, class Cell>
class TwoGroupoid {
 public:
  using Crossed = CrossedGroupoid<Obj, Mor, Cell>;
  using Cell2 = TwoCell<Mor, Cell>;

  explicit TwoGroupoid(Crossed c) : c_(std::move(c)) {}
  const Crossed& crossed() const { return c_; }

  /// The 2-cell f => f o D(a).
  Cell2 cell(const Mor& f, const Cell& a) const {
    if (!c_.obj_equal(c_.base(a), c_.source(f))) throw PreconditionError("2-cell: N-element is not based at the source of f");
    return {f, c_.compose(f, c_.feedback(a)), a};
  }
  Cell2 identity(const Mor& f) const { return {f, f, c_.n_identity(c_.source(f))}; }

  /// b * a : f => h for a : f => g, b : g => h. Its N-component is a o_N b.
  Cell2 vertical(const Cell2& b, const Cell2& a) const {
    if (!c_.mor_equal(a.g, b.f)) throw PreconditionError("vertical composition: cells are not composable");
    return {a.f, b.g, c_.n_compose(a.a, b.a)};
  }

  /// a2 o a1 : f2 o f1 => g2 o g1, with N-component Psi(f1^{-1})(a2) o_N a1.
  Cell2 horizontal(const Cell2& a2, const Cell2& a1) const {
    if (!c_.obj_equal(c_.target(a1.f), c_.source(a2.f))) throw PreconditionError("horizontal composition: cells are not composable");
    return {c_.compose(a2.f, a1.f), c_.compose(a2.g, a1.g), c_.n_compose(c_.psi(c_.inverse(a1.f), a2.a), a1.a)};
  }

  Cell2 vertical_inverse(const Cell2& a) const { return {a.g, a.f, c_.n_inverse(a.a)}; }

  /// 1_{g^{-1}} o a^{-*} o 1_{f^{-1}} : f^{-1} => g^{-1}.
  Cell2 horizontal_inverse(const Cell2& a) const {
    Cell2 out = horizontal(horizontal(identity(c_.inverse(a.g)), vertical_inverse(a)), identity(c_.inverse(a.f)));
    check(c_.mor_equal(out.f, c_.inverse(a.f)) && c_.mor_equal(out.g, c_.inverse(a.g)), "horizontal inverse has wrong boundary");
    return out;
  }

  bool equal(const Cell2& x, const Cell2& y) const {
    return c_.mor_equal(x.f, y.f) && c_.mor_equal(x.g, y.g) && c_.cell_equal(x.a, y.a);
  }
  /// The defining equation g = f o D(a).
  bool well_formed(const Cell2& x) const { return c_.mor_equal(x.g, c_.compose(x.f, c_.feedback(x.a))); }

  /// Reconstruction of D: a : 1_x => g gives D(a) = g.
  Mor feedback_of(const Cell2& a) const {
    if (!c_.mor_equal(a.f, c_.identity(c_.source(a.f)))) throw PreconditionError("feedback_of: source of the cell is not an identity");
    return a.g;
  }
  /// Reconstruction of Psi: Psi(f)(a) = 1_f o a o 1_{f^{-1}} for a : 1_x => D(a).
  Cell psi_of(const Mor& f, const Cell& a) const {
    Cell2 c = cell(c_.identity(c_.source(f)), a);
    return horizontal(horizontal(identity(f), c), identity(c_.inverse(f))).a;
  }

 private:
  Crossed c_;
};

/// Crossed-groupoid axioms on samples: D and Psi(g) are homomorphisms, Psi is functorial,
/// (i) D(Psi(g)(a)) = g D(a) g^{-1} and (ii) Psi(D(a))(b) = a b a^{-1}.
template <class Obj, class Mor, class Cell>
Report check_crossed_axioms(const CrossedGroupoid<Obj, Mor, Cell>& c, const std::vector<Mor>& mors, const std::vector<Cell>& cells) {
  Report r;
  for (const auto& g : mors)
    for (const auto& a : cells) {
      if (!c.obj_equal(c.base(a), c.source(g))) continue;
      std::string s = c.describe_mor(g) + "; " + c.describe_cell(a);
      r.add("crossed(i) equivariance", s, c.mor_equal(c.feedback(c.psi(g, a)), c.conjugate(g, c.feedback(a))));
      for (const auto& b : cells)
        if (c.obj_equal(c.base(b), c.base(a)))
          r.add("psi homomorphism", s, c.cell_equal(c.psi(g, c.n_compose(a, b)), c.n_compose(c.psi(g, a), c.psi(g, b))));
    }
  for (const auto& g : mors)
    for (const auto& h : mors) {
      if (!c.obj_equal(c.target(g), c.source(h))) continue;
      for (const auto& a : cells)
        if (c.obj_equal(c.base(a), c.source(g)))
          r.add("psi functorial", c.describe_mor(h) + " o " + c.describe_mor(g) + "; " + c.describe_cell(a),
                c.cell_equal(c.psi(c.compose(h, g), a), c.psi(h, c.psi(g, a))));
    }
  for (const auto& a : cells)
    for (const auto& b : cells) {
      if (!c.obj_equal(c.base(a), c.base(b))) continue;
      std::string s = c.describe_cell(a) + "; " + c.describe_cell(b);
      r.add("crossed(ii) Peiffer", s, c.cell_equal(c.psi(c.feedback(a), b), c.n_conjugate(a, b)));
      r.add("feedback homomorphism", s, c.mor_equal(c.feedback(c.n_compose(a, b)), c.compose(c.feedback(a), c.feedback(b))));
    }
  return r;
}

/// Sample 2-cells over a chain x -> y -> z: pairs (a1 : f1 => g1, b1 : g1 => h1) over f1 : x -> y
/// and (a2, b2) over f2 : y -> z, for every choice of N-elements from `cells_x`, `cells_y`.
template <class Obj, class Mor, class Cell>
Report check_two_groupoid(const TwoGroupoid<Obj, Mor, Cell>& T, const Mor& f1, const Mor& f2, const std::vector<Cell>& cells_x,
                          const std::vector<Cell>& cells_y) {
  const auto& c = T.crossed();
  Report r;
  using Cell2 = typename TwoGroupoid<Obj, Mor, Cell>::Cell2;
  std::vector<std::pair<Cell2, Cell2>> lower, upper;
  for (const auto& a : cells_x)
    for (const auto& b : cells_x) {
      Cell2 a1 = T.cell(f1, a);
      lower.push_back({a1, T.cell(a1.g, b)});
    }
  for (const auto& a : cells_y)
    for (const auto& b : cells_y) {
      Cell2 a2 = T.cell(f2, a);
      upper.push_back({a2, T.cell(a2.g, b)});
    }
  auto label = [&](const Cell2& x) { return c.describe_mor(x.f) + " =[" + c.describe_cell(x.a) + "]=> " + c.describe_mor(x.g); };
  for (const auto& [a1, b1] : lower) {
    r.add("well-formed", label(a1), T.well_formed(a1) && T.well_formed(b1));
    Cell2 v = T.vertical(b1, a1);
    r.add("vertical well-formed", label(v), T.well_formed(v));
    r.add("vertical unit", label(a1), T.equal(T.vertical(a1, T.identity(a1.f)), a1) && T.equal(T.vertical(T.identity(a1.g), a1), a1));
    r.add("vertical inverse", label(a1), T.equal(T.vertical(T.vertical_inverse(a1), a1), T.identity(a1.f)));
    Cell2 hi = T.horizontal_inverse(a1);
    r.add("horizontal inverse", label(a1),
          T.well_formed(hi) && T.equal(T.horizontal(a1, hi), T.identity(c.compose(a1.f, hi.f))) &&
              T.equal(T.horizontal(hi, a1), T.identity(c.compose(hi.f, a1.f))));
    for (const auto& [a2, b2] : upper) {
      Cell2 lhs = T.horizontal(T.vertical(b2, a2), T.vertical(b1, a1));
      Cell2 rhs = T.vertical(T.horizontal(b2, b1), T.horizontal(a2, a1));
      r.add("exchange law", label(a1) + " ; " + label(a2), T.well_formed(lhs) && T.equal(lhs, rhs));
      r.add("horizontal unit", label(a2) + " o " + label(a1),
            T.equal(T.horizontal(a2, T.identity(c.identity(c.source(a2.f)))), a2) &&
                T.equal(T.horizontal(T.identity(c.identity(c.target(a1.f))), a1), a1));
    }
  }
  // Horizontal associativity over x -> y -> z -> x using f3 = (f2 o f1)^{-1}.
  Mor f3 = c.inverse(c.compose(f2, f1));
  for (const auto& [a1, b1] : lower)
    for (const auto& [a2, b2] : upper) {
      Cell2 a3 = T.identity(f3);
      Cell2 lhs = T.horizontal(a3, T.horizontal(a2, a1)), rhs = T.horizontal(T.horizontal(a3, a2), a1);
      r.add("horizontal associativity", label(a1) + " ; " + label(a2), T.equal(lhs, rhs));
    }
  return r;
}

/// D and Psi recovered from the 2-groupoid agree with the crossed data.
template <class Obj, class Mor, class Cell>
Report check_reconstruction(const TwoGroupoid<Obj, Mor, Cell>& T, const std::vector<Mor>& mors, const std::vector<Cell>& cells) {
  const auto& c = T.crossed();
  Report r;
  for (const auto& a : cells) {
    auto x = T.cell(c.identity(c.base(a)), a);
    r.add("reconstruct D", c.describe_cell(a), c.mor_equal(T.feedback_of(x), c.feedback(a)));
  }
  for (const auto& g : mors)
    for (const auto& a : cells)
      if (c.obj_equal(c.base(a), c.source(g)))
        r.add("reconstruct psi", c.describe_mor(g) + "; " + c.describe_cell(a), c.cell_equal(T.psi_of(g, a), c.psi(g, a)));
  return r;
}

}  // namespace defo
