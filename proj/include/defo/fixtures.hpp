#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "defo/io.hpp"
#include "defo/models.hpp"

namespace defo::fixtures {

struct Fixture {
  std::string name;
  std::string description;
  std::function<io::Json()> emit;
};

/// u (deg 0) -> v (deg 1), abelian.
inline DGLieData abelian_two_term() {
  DGLieData d;
  d.degrees = {{0, {"u"}}, {1, {"v"}}};
  d.differential = {{"u", {{"v", Rational(1)}}}};
  return d;
}

/// v (deg 1), w (deg 2), [v, v] = 2w: MC lifts of c*t*v are obstructed by c^2 t^2 [w].
inline DGLieData obstruction_algebra() {
  DGLieData d;
  d.degrees = {{1, {"v"}}, {2, {"w"}}};
  d.bracket = {{{"v", "v"}, {{"w", Rational(2)}}}};
  return d;
}

/// The affine line [a, b] = b with d(b) = e in degree 1 and [a, e] = 0, so that
/// d[a, b] = e while [da, b] + [a, db] = 0: only the Leibniz rule fails.
inline DGLieData broken_leibniz() {
  DGLieData d;
  d.degrees = {{0, {"a", "b"}}, {1, {"e"}}};
  d.differential = {{"b", {{"e", Rational(1)}}}};
  d.bracket = {{{"a", "b"}, {{"b", Rational(1)}}}};
  return d;
}

/// Unit inclusion g -> g (x) contractible_pair for g = affine line (x) exterior algebra.
inline MorphismPtr quasi_iso_pair() {
  auto g = DGLieAlgebra::make(tensor_model(lie::affine_line(), cdga::exterior2()));
  auto h = DGLieAlgebra::make(tensor_model(lie::affine_line(), cdga::tensor(cdga::exterior2(), cdga::contractible_pair())));
  return DGLAMorphism::make(g, h, unit_inclusion(*g, *h));
}

/// exp([Q, H]) on the affine line (x) quantum-type coefficients, with H equal to 1 on the first
/// admissible (word, target) pair of each weight 2..W, composed with the unit inclusion into the
/// contractible extension. Nonstrict from weight 2 on.
inline LInfPtr nonstrict_linf(int W = 3) {
  auto g = DGLieAlgebra::make(tensor_model(lie::affine_line(), cdga::quantum()));
  auto h = DGLieAlgebra::make(tensor_model(lie::affine_line(), cdga::tensor(cdga::quantum(), cdga::contractible_pair())));
  std::map<bar::Word, bar::HVec> H;
  const int dim = static_cast<int>(g->space().total_dim());
  for (int n = 2; n <= W; ++n) {
    int picked = 0;
    for (const auto& w : bar::words(*g, n)) {
      for (int t = 0; t < dim && picked < 2; ++t)
        if (bar::sdeg(*g, t) == bar::word_degree(*g, w) - 1 && std::set<int>(w.begin(), w.end()).count(t) == 0) {
          H[w][t] = Rational(1);
          ++picked;
          break;
        }
      if (picked >= 2) break;
    }
  }
  auto a = LInfMorphism::make(exp_homotopy_automorphism(g, H, W), W);
  auto s = LInfMorphism::strict(*DGLAMorphism::make(g, h, unit_inclusion(*g, *h)), W);
  return compose_linf(*a, *s, W);
}

inline std::vector<Fixture> all() {
  auto dgla = [](DGLieData d) { return [d] { return io::to_json(d); }; };
  return {
      {"abelian_two_term", "u -> v with zero bracket", dgla(abelian_two_term())},
      {"zero_differential", "sl2 (x) exterior algebra on two degree-1 generators, d = 0",
       dgla(tensor_model(lie::sl2(), cdga::exterior2()))},
      {"obstruction", "v, w with [v, v] = 2w; o2 of c t v is c^2 t^2 [w]", dgla(obstruction_algebra())},
      {"quantum_type", "Heisenberg (x) quantum-type coefficients, nonzero in degree -1",
       dgla(tensor_model(lie::heisenberg(), cdga::quantum()))},
      {"two_negative", "affine line (x) two quantum-type factors, degrees -2..2",
       dgla(tensor_model(lie::affine_line(), cdga::tensor(cdga::quantum(), cdga::quantum("s", "f"))))},
      {"negative_exterior", "k^2 (x) exterior algebra on degree -1 generators",
       dgla(tensor_model(lie::abelian(2), cdga::negative_exterior()))},
      {"quasi_iso_pair", "unit inclusion into the contractible extension", [] { return io::to_json(*quasi_iso_pair()); }},
      {"nonstrict_linf", "exp([Q, H]) followed by a unit inclusion, valid to weight 3",
       [] {
         auto f = nonstrict_linf(3);
         return io::to_json(f->data(), f->horizon());
       }},
  };
}

inline const Fixture& find(const std::string& name) {
  static const auto list = all();
  for (const auto& f : list)
    if (f.name == name) return f;
  throw PreconditionError("unknown example '" + name + "'");
}

}  // namespace defo::fixtures
