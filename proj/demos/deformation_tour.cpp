// Walks through MC lifting, obstructions, gauge connection, transfer and L-infinity pushforward.

#include <iostream>

#include "defo/deligne.hpp"
#include "defo/fixtures.hpp"
#include "defo/linf.hpp"

using namespace defo;

int main() {
  // [v, v] = 2w: c t v lifts to order 2 only when c = 0.
  auto obs = DGLieAlgebra::make(fixtures::obstruction_algebra());
  NilpotentDGLA L1(obs, TruncationContext::make(1, 1)), L2(obs, TruncationContext::make(1, 2));
  for (int c : {0, 2}) {
    Element w = L1.from_terms({{"v", {1}, c}});
    auto cls = o2_of(L2, L1, w);
    std::cout << "w = " << L1.to_string(w) << ": o2 representative " << L2.to_string(cls.representative) << ", lift "
              << (lift_mc_one_order(L2, L1, w) ? "exists" : "obstructed") << "\n";
  }

  // u -> v: every MC element is gauge-equivalent to zero.
  auto ab = DGLieAlgebra::make(fixtures::abelian_two_term());
  NilpotentDGLA A(ab, TruncationContext::make(1, 3));
  Element w = A.from_terms({{"v", {1}, 1}, {"v", {3}, -2}});
  auto r = connect_greedy(A, w, A.zero(1));
  std::cout << "connect " << A.to_string(w) << " to 0: gauge log " << A.to_string(r.witness->log) << "\n";

  // Transfer along the unit inclusion into a contractible extension.
  auto phi = fixtures::quasi_iso_pair();
  auto ctx = TruncationContext::make(1, 2);
  NilpotentDGLA Lg(phi->source(), ctx), Lh(phi->target(), ctx);
  Element chi = Lh.from_terms({{"a.e", {1}, 1}, {"b.e", {1}, 1}, {"b.dt", {2}, 1}});
  auto t = transfer_mc(*phi, Lg, Lh, chi);
  std::cout << "transfer: omega = " << Lg.to_string(t.omega) << ", h = " << Lh.to_string(t.h.log) << "\n";

  // Nonstrict L-infinity pushforward and the gauge it induces.
  auto f = fixtures::nonstrict_linf(3);
  NilpotentDGLA Sg(f->source(), TruncationContext::make(1, 3)), Sh(f->target(), TruncationContext::make(1, 3));
  Element x = Sg.from_terms({{"a.e", {1}, 1}, {"b.e", {1}, 1}});
  Element pushed = mc_pushforward(*f, Sg, Sh, x);
  std::cout << "pushforward: " << Sh.to_string(pushed) << " (MC: " << (is_mc(Sh, pushed) ? "yes" : "no") << ")\n";
  GaugeElement gamma{Sg.from_terms({{"b", {1}, 1}})};
  auto g = gauge_respect(*f, Sg, Sh, x, gamma);
  std::cout << "induced gauge: " << Sh.to_string(g.h.log) << "\n";
  return 0;
}
