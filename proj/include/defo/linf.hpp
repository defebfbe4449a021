#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "defo/mc_gauge.hpp"
#include "defo/report.hpp"

namespace defo {

/// Bar coalgebra Sym(g[1]). A word is a nondecreasing list of global basis indices of g; the
/// shifted degree of index i is |x_i| - 1. Odd shifted generators square to zero.
namespace bar {

using Word = std::vector<int>;
using SymVec = std::map<Word, Rational>;  ///< element of Sym(g[1]) on canonical words
using HVec = std::map<int, Rational>;     ///< element of g[1] by global index

inline int sdeg(const DGLieAlgebra& g, int i) { return g.space().degree_of(i) - 1; }
inline bool odd(const DGLieAlgebra& g, int i) { return sdeg(g, i) % 2 != 0; }

inline int word_degree(const DGLieAlgebra& g, const Word& w) {
  int s = 0;
  for (int i : w) s += sdeg(g, i);
  return s;
}

/// Koszul sign of sorting `seq` into canonical order; 0 if an odd generator repeats.
inline int canonical_sign(const DGLieAlgebra& g, Word& seq) {
  int sign = 1;
  for (std::size_t a = 1; a < seq.size(); ++a)
    for (std::size_t b = a; b > 0 && seq[b - 1] > seq[b]; --b) {
      if (odd(g, seq[b - 1]) && odd(g, seq[b])) sign = -sign;
      std::swap(seq[b - 1], seq[b]);
    }
  for (std::size_t a = 1; a < seq.size(); ++a)
    if (seq[a] == seq[a - 1] && odd(g, seq[a])) return 0;
  return sign;
}

/// Koszul sign of reordering the letters of w according to `perm` (a list of positions).
inline int permutation_sign(const DGLieAlgebra& g, const Word& w, const std::vector<int>& perm) {
  int sign = 1;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b] && odd(g, w[perm[a]]) && odd(g, w[perm[b]])) sign = -sign;
  return sign;
}

inline void add_to(SymVec& acc, const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto& x = acc[w];
  x += c;
  if (sgn(x) == 0) acc.erase(w);
}

inline SymVec mul(const DGLieAlgebra& g, const SymVec& a, const SymVec& b) {
  SymVec out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      int s = canonical_sign(g, w);
      if (s != 0) add_to(out, w, ca * cb * s);
    }
  return out;
}

inline SymVec from_h(const HVec& v) {
  SymVec out;
  for (const auto& [i, c] : v)
    if (sgn(c) != 0) out[{i}] = c;
  return out;
}

inline Word sub_word(const Word& w, const std::vector<int>& pos) {
  Word out;
  for (int p : pos) out.push_back(w[p]);
  return out;
}

/// Set partitions of {0..n-1} with blocks ordered by their least element.
inline void set_partitions(int n, const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      visit(blocks);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(i);
      rec(i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  if (n > 0) rec(0);
}

/// Canonical words of weight n in Sym^n(g[1]).
inline std::vector<Word> words(const DGLieAlgebra& g, int n) {
  std::vector<Word> out;
  const int dim = static_cast<int>(g.space().total_dim());
  Word w;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(w.size()) == n) {
      out.push_back(w);
      return;
    }
    for (int i = start; i < dim; ++i) {
      if (!w.empty() && w.back() == i && odd(g, i)) continue;
      w.push_back(i);
      rec(i);
      w.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Q1(s x) = s dx.
inline HVec q1(const DGLieAlgebra& g, int x) {
  HVec out;
  int dx = g.space().degree_of(x) + 1;
  for (const auto& [t, c] : g.d_of(x)) out[g.space().global(dx, t)] += c;
  return out;
}

/// Q2(s x s y) = (-1)^{|sx|} s[x, y].
inline HVec q2(const DGLieAlgebra& g, int x, int y) {
  HVec out;
  int deg = g.space().degree_of(x) + g.space().degree_of(y);
  int sign = odd(g, x) ? -1 : 1;
  for (const auto& [t, c] : g.bracket_of(x, y)) out[g.space().global(deg, t)] += c * sign;
  return out;
}

inline std::string word_name(const DGLieAlgebra& g, const Word& w) {
  std::string s;
  for (int i : w) s += (s.empty() ? "" : " ") + g.space().name_of(i);
  return "(" + s + ")";
}

/// Corestriction of a coderivation: its value on a canonical word (zero if no entry).
using Corestriction = std::function<HVec(const Word&)>;

/// Coderivation with corestriction `c` applied to a canonical word: the sum over nonempty
/// sub-words w_A of eps(A) c(w_A) w_B, for |A| <= max_arity.
inline SymVec apply_coderivation(const DGLieAlgebra& g, const Corestriction& c, const Word& w, int max_arity) {
  SymVec out;
  const int n = static_cast<int>(w.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > max_arity) continue;
    std::vector<int> perm, rest;
    for (int k = 0; k < n; ++k) ((mask >> k) & 1u ? perm : rest).push_back(k);
    HVec v = c(sub_word(w, perm));
    if (v.empty()) continue;
    std::size_t split = perm.size();
    perm.insert(perm.end(), rest.begin(), rest.end());
    SymVec tail{{sub_word(w, std::vector<int>(perm.begin() + split, perm.end())), Rational(permutation_sign(g, w, perm))}};
    for (const auto& [x, k] : mul(g, from_h(v), tail)) add_to(out, x, k);
  }
  return out;
}

inline SymVec apply_coderivation(const DGLieAlgebra& g, const Corestriction& c, const SymVec& v, int max_arity) {
  SymVec out;
  for (const auto& [w, k] : v)
    for (const auto& [x, d] : apply_coderivation(g, c, w, max_arity)) add_to(out, x, k * d);
  return out;
}

/// Corestriction Q1 + Q2 of the bar differential.
inline Corestriction bar_corestriction(const DGLieAlgebra& g) {
  return [&g](const Word& w) -> HVec {
    HVec v = w.size() == 1 ? q1(g, w[0]) : w.size() == 2 ? q2(g, w[0], w[1]) : HVec{};
    std::erase_if(v, [](const auto& p) { return sgn(p.second) == 0; });
    return v;
  };
}

inline SymVec differential(const DGLieAlgebra& g, const Word& w) { return apply_coderivation(g, bar_corestriction(g), w, 2); }
inline SymVec differential(const DGLieAlgebra& g, const SymVec& v) { return apply_coderivation(g, bar_corestriction(g), v, 2); }

/// Weight-one part of v as an element of g[1].
inline HVec linear_part(const SymVec& v) {
  HVec out;
  for (const auto& [w, c] : v)
    if (w.size() == 1) out[w[0]] += c;
  return out;
}

}  // namespace bar

/// Taylor coefficients F_j : Sym^j(g[1]) -> h[1] on canonical words. F_1 is phi_1; F_j is the
/// shifted form of phi_j : wedge^j g -> h of degree 1 - j.
struct LInfData {
  DGLAPtr source, target;
  std::map<int, std::map<bar::Word, bar::HVec>> taylor;

  const bar::HVec* at(const bar::Word& w) const {
    auto it = taylor.find(static_cast<int>(w.size()));
    if (it == taylor.end()) return nullptr;
    auto jt = it->second.find(w);
    return jt == it->second.end() ? nullptr : &jt->second;
  }
  int max_order() const { return taylor.empty() ? 0 : taylor.rbegin()->first; }
  bool is_strict() const {
    for (const auto& [j, m] : taylor)
      if (j >= 2)
        for (const auto& [w, v] : m)
          for (const auto& [t, c] : v)
            if (sgn(c) != 0) return false;
    return true;
  }
  /// Sets F_j on an arbitrary word, canonicalizing it and folding in the Koszul sign.
  void set(bar::Word w, int target_index, const Rational& c) {
    int s = bar::canonical_sign(*source, w);
    if (s == 0) throw PreconditionError("Taylor coefficient on a word with a repeated odd letter");
    auto& v = taylor[static_cast<int>(w.size())][w];
    v[target_index] = c * s;
  }
};

namespace detail {

/// F applied to a word, keeping the weight-1 and weight-2 parts only when `max_blocks` = 2.
inline bar::SymVec coalgebra_map(const LInfData& f, const bar::Word& w, int max_blocks) {
  const auto& g = *f.source;
  bar::SymVec out;
  bar::set_partitions(static_cast<int>(w.size()), [&](const std::vector<std::vector<int>>& blocks) {
    if (static_cast<int>(blocks.size()) > max_blocks) return;
    std::vector<int> perm;
    for (const auto& b : blocks) perm.insert(perm.end(), b.begin(), b.end());
    bar::SymVec prod{{bar::Word{}, Rational(bar::permutation_sign(g, w, perm))}};
    for (const auto& b : blocks) {
      const bar::HVec* v = f.at(bar::sub_word(w, b));
      if (!v) return;
      prod = bar::mul(*f.target, prod, bar::from_h(*v));
      if (prod.empty()) return;
    }
    for (const auto& [x, c] : prod) bar::add_to(out, x, c);
  });
  return out;
}

/// pr_1 of Q_h F(w) and of F Q_g(w).
inline std::pair<bar::HVec, bar::HVec> corestrictions(const LInfData& f, const bar::Word& w) {
  const auto& g = *f.source;
  const auto& h = *f.target;
  bar::HVec lhs, rhs;
  for (const auto& [x, c] : bar::differential(g, w))
    if (const auto* v = f.at(x))
      for (const auto& [t, d] : *v) lhs[t] += c * d;
  for (const auto& [x, c] : coalgebra_map(f, w, 2)) {
    if (x.size() == 1)
      for (const auto& [t, d] : bar::q1(h, x[0])) rhs[t] += c * d;
    else if (x.size() == 2)
      for (const auto& [t, d] : bar::q2(h, x[0], x[1])) rhs[t] += c * d;
  }
  std::erase_if(lhs, [](const auto& p) { return sgn(p.second) == 0; });
  std::erase_if(rhs, [](const auto& p) { return sgn(p.second) == 0; });
  return {lhs, rhs};
}

inline std::string hvec_name(const DGLieAlgebra& h, const bar::HVec& v) {
  std::string s;
  for (const auto& [t, c] : v)
    if (sgn(c) != 0) s += (s.empty() ? "" : " + ") + to_string(c) + "*" + h.space().name_of(t);
  return s.empty() ? "0" : s;
}

}  // namespace detail

/// Checks Q_h o F = F o Q_g on Sym^{<=W}(g[1]) by comparing corestrictions, plus the degree
/// and canonical-form constraints on stored entries. One check per weight; the first failing
/// word is named.
inline Report validate_linf(const LInfData& f, int W) {
  Report r;
  const auto& g = *f.source;
  const auto& h = *f.target;
  bool shape = true;
  std::string bad;
  for (const auto& [j, m] : f.taylor)
    for (const auto& [w, v] : m) {
      bar::Word c = w;
      bool canonical = static_cast<int>(w.size()) == j && bar::canonical_sign(g, c) == 1 && c == w;
      for (int i : w) canonical = canonical && i >= 0 && i < static_cast<int>(g.space().total_dim());
      for (const auto& [t, x] : v) {
        bool ok = canonical && t >= 0 && t < static_cast<int>(h.space().total_dim()) &&
                  (sgn(x) == 0 || bar::sdeg(h, t) == bar::word_degree(g, w));
        if (!ok && shape) {
          shape = false;
          bad = bar::word_name(g, w);
        }
      }
    }
  r.add("taylor coefficients have degree 1-j", "all orders", shape, bad);
  for (int n = 1; n <= W; ++n) {
    bool ok = true;
    std::string detail;
    for (const auto& w : bar::words(g, n)) {
      auto [lhs, rhs] = detail::corestrictions(f, w);
      if (lhs != rhs) {
        ok = false;
        detail = "word " + bar::word_name(g, w) + ": F(Qw) = " + detail::hvec_name(h, lhs) + ", Q(Fw) = " + detail::hvec_name(h, rhs);
        break;
      }
    }
    r.add("weight " + std::to_string(n), "L-infinity relation", ok, detail);
  }
  return r;
}

class LInfMorphism;
using LInfPtr = std::shared_ptr<const LInfMorphism>;

/// Validated L-infinity morphism with validity horizon W.
class LInfMorphism {
 public:
  static LInfPtr make(LInfData data, int W) {
    if (!data.source || !data.target) throw PreconditionError("L-infinity morphism needs source and target");
    auto rep = validate_linf(data, W);
    if (!rep.ok()) {
      const auto* c = rep.first_failure();
      throw PreconditionError("not an L-infinity morphism at " + c->name + ": " + c->detail);
    }
    return LInfPtr(new LInfMorphism(std::move(data), W));
  }

  static LInfPtr strict(const DGLAMorphism& phi, int W) {
    LInfData d{phi.source(), phi.target(), {}};
    const auto& gs = phi.source()->space();
    const auto& hs = phi.target()->space();
    for (const auto& [deg, m] : phi.components())
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
          if (sgn(m(r, c)) != 0) d.taylor[1][{gs.global(deg, static_cast<int>(c))}][hs.global(deg, static_cast<int>(r))] = m(r, c);
    return make(std::move(d), W);
  }

  static LInfPtr identity(const DGLAPtr& g, int W) {
    LInfData d{g, g, {}};
    for (std::size_t i = 0; i < g->space().total_dim(); ++i) d.taylor[1][{static_cast<int>(i)}][static_cast<int>(i)] = 1;
    return make(std::move(d), W);
  }

  const LInfData& data() const { return d_; }
  const DGLAPtr& source() const { return d_.source; }
  const DGLAPtr& target() const { return d_.target; }
  int horizon() const { return W_; }

 private:
  LInfMorphism(LInfData d, int W) : d_(std::move(d)), W_(W) {}
  LInfData d_;
  int W_;
};

/// Taylor coefficients of Xi o Phi up to weight W, via pr_1 Xi(Phi(w)) over set partitions.
inline LInfPtr compose_linf(const LInfMorphism& phi, const LInfMorphism& xi, int W) {
  if (!(*phi.target() == *xi.source())) throw PreconditionError("compose_linf: target of the first is not the source of the second");
  if (phi.horizon() < W || xi.horizon() < W) throw PreconditionError("compose_linf: order exceeds a validity horizon");
  const auto& g = *phi.source();
  LInfData out{phi.source(), xi.target(), {}};
  for (int n = 1; n <= W; ++n)
    for (const auto& w : bar::words(g, n)) {
      bar::HVec acc;
      for (const auto& [x, c] : detail::coalgebra_map(phi.data(), w, n))
        if (const auto* v = xi.data().at(x))
          for (const auto& [t, d] : *v) acc[t] += c * d;
      std::erase_if(acc, [](const auto& p) { return sgn(p.second) == 0; });
      if (!acc.empty()) out.taylor[n][w] = acc;
    }
  return LInfMorphism::make(std::move(out), W);
}

/// Coalgebra automorphism exp(Z) of Sym(g[1]) with Z = [Q, H] = QH + HQ, where H is the
/// coderivation of degree -1 with corestriction `h` on words of weight >= 2. Z lowers weight,
/// so exp(Z) is finite on each word; it commutes with Q, so the result is an L-infinity
/// automorphism with F_1 = id. Taylor coefficients are produced up to weight W.
inline LInfData exp_homotopy_automorphism(const DGLAPtr& g, const std::map<bar::Word, bar::HVec>& h, int W) {
  for (const auto& [w, v] : h) {
    bar::Word c = w;
    if (w.size() < 2 || bar::canonical_sign(*g, c) != 1 || c != w) throw PreconditionError("homotopy corestriction needs canonical words of weight >= 2");
    for (const auto& [t, x] : v)
      if (sgn(x) != 0 && bar::sdeg(*g, t) != bar::word_degree(*g, w) - 1) throw PreconditionError("homotopy corestriction must have degree -1");
  }
  const auto& G = *g;
  bar::Corestriction hc = [&h](const bar::Word& w) {
    auto it = h.find(w);
    return it == h.end() ? bar::HVec{} : it->second;
  };
  bar::Corestriction qc = bar::bar_corestriction(G);
  std::map<bar::Word, bar::HVec> z;
  for (int n = 2; n <= W; ++n)
    for (const auto& w : bar::words(G, n)) {
      bar::HVec v = bar::linear_part(bar::apply_coderivation(G, qc, bar::apply_coderivation(G, hc, w, n), 2));
      for (const auto& [t, c] : bar::linear_part(bar::apply_coderivation(G, hc, bar::differential(G, w), n))) v[t] += c;
      std::erase_if(v, [](const auto& p) { return sgn(p.second) == 0; });
      if (!v.empty()) z[w] = v;
    }
  bar::Corestriction zc = [&z](const bar::Word& w) {
    auto it = z.find(w);
    return it == z.end() ? bar::HVec{} : it->second;
  };
  LInfData out{g, g, {}};
  for (int n = 1; n <= W; ++n)
    for (const auto& w : bar::words(G, n)) {
      bar::SymVec v{{w, Rational(1)}};
      bar::HVec acc;
      for (int k = 0; !v.empty(); ++k) {
        if (k > 0) {
          v = bar::apply_coderivation(G, zc, v, n);
          for (auto& [x, c] : v) c *= Rational(1, k);
        }
        for (const auto& [t, c] : bar::linear_part(v)) acc[t] += c;
      }
      std::erase_if(acc, [](const auto& p) { return sgn(p.second) == 0; });
      if (!acc.empty()) out.taylor[n][w] = acc;
    }
  return out;
}

/// Solves the weight-n relation for F_n given F_1..F_{n-1} (linear in F_n). Existing F_n entries
/// are replaced. Returns false if the linear system is inconsistent.
inline bool solve_taylor_order(LInfData& f, int n) {
  const auto& g = *f.source;
  const auto& h = *f.target;
  f.taylor.erase(n);
  auto ws = bar::words(g, n);
  std::map<bar::Word, std::size_t> word_index;
  for (std::size_t i = 0; i < ws.size(); ++i) word_index[ws[i]] = i;
  // Unknown u(w, t) for target indices t with matching shifted degree.
  std::vector<std::pair<std::size_t, int>> unknowns;
  std::map<std::pair<std::size_t, int>, std::size_t> uidx;
  const int hdim = static_cast<int>(h.space().total_dim());
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (int t = 0; t < hdim; ++t)
      if (bar::sdeg(h, t) == bar::word_degree(g, ws[i])) {
        uidx[{i, t}] = unknowns.size();
        unknowns.push_back({i, t});
      }
  // Equation (w, t'): sum_{x in Q1-part of Qw} c u(x, t') - sum_t u(w, t) Q1_h(t)_{t'} = rhs.
  std::vector<std::pair<std::size_t, int>> eqs;
  std::map<std::pair<std::size_t, int>, std::size_t> eidx;
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (int t = 0; t < hdim; ++t) {
      eidx[{i, t}] = eqs.size();
      eqs.push_back({i, t});
    }
  QMatrix A(eqs.size(), unknowns.size());
  QVector b(eqs.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const auto& w = ws[i];
    auto [lhs, rhs] = detail::corestrictions(f, w);  // F_n absent: both sides from lower orders
    for (const auto& [t, c] : rhs) b[eidx[{i, t}]] += c;
    for (const auto& [t, c] : lhs) b[eidx[{i, t}]] -= c;
    for (const auto& [x, c] : bar::differential(g, w)) {
      if (static_cast<int>(x.size()) != n) continue;
      std::size_t xi = word_index.at(x);
      for (int t = 0; t < hdim; ++t)
        if (auto it = uidx.find({xi, t}); it != uidx.end()) A(eidx[{i, t}], it->second) += c;
    }
    for (int t = 0; t < hdim; ++t) {
      auto it = uidx.find({i, t});
      if (it == uidx.end()) continue;
      for (const auto& [t2, c] : bar::q1(h, t)) A(eidx[{i, t2}], it->second) -= c;
    }
  }
  auto x = solve(A, b);
  if (!x) return false;
  for (std::size_t k = 0; k < unknowns.size(); ++k)
    if (sgn((*x)[k]) != 0) f.taylor[n][ws[unknowns[k].first]][unknowns[k].second] = (*x)[k];
  return true;
}

namespace detail {

/// Coefficient of global basis index `i` in an element of m (x) g, as a series in m.
inline SeriesElement coefficient_series(const NilpotentDGLA& L, const Element& e, int i) {
  auto [deg, b] = L.g().space().local(i);
  SeriesElement s(L.context(), true);
  if (deg != e.degree) return s;
  for (std::size_t m = 0; m < L.monomials(); ++m) s.coefficients()[m] = e.at(b, m);
  return s;
}

/// F_j(s v_1 ... s v_j) for elements v_i of m (x) g (m has degree 0, so no extra signs).
inline Element multilinear(const LInfData& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh, const std::vector<const Element*>& args) {
  const int j = static_cast<int>(args.size());
  const auto& g = *f.source;
  const auto& h = *f.target;
  int out_deg = 1 - j;
  for (const auto* a : args) out_deg += a->degree;
  Element out = Lh.zero(out_deg);
  auto it = f.taylor.find(j);
  if (it == f.taylor.end()) return out;
  std::vector<std::vector<SeriesElement>> coef(j);
  for (int a = 0; a < j; ++a) {
    coef[a].reserve(g.space().total_dim());
    for (std::size_t i = 0; i < g.space().total_dim(); ++i) coef[a].push_back(coefficient_series(Lg, *args[a], static_cast<int>(i)));
  }
  for (const auto& [w, v] : it->second) {
    bar::Word arr = w;
    do {
      SeriesElement prod = SeriesElement::constant(Lg.context(), 1);
      bool zero = false;
      for (int a = 0; a < j && !zero; ++a) {
        if (coef[a][arr[a]].is_zero()) zero = true;
        else prod = series_mul(prod, coef[a][arr[a]]);
      }
      if (zero || prod.is_zero()) continue;
      bar::Word tmp = arr;
      int s = bar::canonical_sign(g, tmp);
      for (const auto& [t, c] : v) {
        auto [tdeg, tb] = h.space().local(t);
        if (tdeg != out_deg) continue;
        for (std::size_t m = 0; m < Lh.monomials(); ++m) out.coeffs[tb * Lh.monomials() + m] += prod.coefficients()[m] * c * s;
      }
    } while (std::next_permutation(arr.begin(), arr.end()));
  }
  return out;
}

inline void require_pushforward(const LInfMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh) {
  if (!(Lg.g() == *f.source()) || !(Lh.g() == *f.target())) throw ContextMismatch("pushforward: algebras do not match the morphism");
  require_same_context(*Lg.context(), *Lh.context());
  if (f.horizon() < Lg.order()) throw PreconditionError("pushforward: validity horizon below the truncation order");
}

}  // namespace detail

/// MC(Phi)(w) = sum_j 1/j! F_j(w, ..., w); terms with j > N vanish.
inline Element mc_pushforward(const LInfMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh, const Element& w) {
  detail::require_pushforward(f, Lg, Lh);
  if (!is_mc(Lg, w)) throw PreconditionError("pushforward: input is not Maurer-Cartan");
  Element out = Lh.zero(1);
  for (int j = 1; j <= Lg.order(); ++j) {
    std::vector<const Element*> args(j, &w);
    out += detail::multilinear(f.data(), Lg, Lh, args) * factorial_inverse(j);
  }
  check(is_mc(Lh, out), "pushforward left the MC locus");
  return out;
}

namespace detail {

/// sum over t-degree splittings of F_j applied to polynomial arguments.
inline ElementPoly multilinear_poly(const LInfData& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh,
                                    const std::vector<const ElementPoly*> args) {
  ElementPoly out;
  std::vector<std::size_t> k(args.size(), 0);
  for (const auto* a : args)
    if (a->coeffs.empty()) return out;
  while (true) {
    std::vector<const Element*> pick;
    std::size_t deg = 0;
    for (std::size_t a = 0; a < args.size(); ++a) {
      pick.push_back(&args[a]->coeffs[k[a]]);
      deg += k[a];
    }
    Element v = multilinear(f, Lg, Lh, pick);
    if (out.coeffs.size() <= deg) out.coeffs.resize(deg + 1, Lh.zero(v.degree));
    out.coeffs[deg] += v;
    std::size_t a = 0;
    while (a < args.size() && ++k[a] == args[a]->coeffs.size()) k[a++] = 0;
    if (a == args.size()) break;
  }
  return poly_trim(out);
}

}  // namespace detail

/// Pushforward of an MC path: w1(t) -> MC(Phi)(w1(t)) and w0(t) -> sum_j 1/(j-1)! F_j(w0, w1, ..., w1).
inline MCPath pushforward_path(const LInfMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh, const MCPath& p) {
  detail::require_pushforward(f, Lg, Lh);
  if (auto defect = path_defect(Lg, p); !defect.empty()) throw PreconditionError("pushforward_path: " + defect);
  MCPath out{{{Lh.zero(1)}}, {{Lh.zero(0)}}};
  for (int j = 1; j <= Lg.order(); ++j) {
    std::vector<const ElementPoly*> ones(j, &p.one_part);
    out.one_part = poly_add(out.one_part, poly_map(detail::multilinear_poly(f.data(), Lg, Lh, ones),
                                                    [&](const Element& e) { return e * factorial_inverse(j); }));
    std::vector<const ElementPoly*> mixed(j, &p.one_part);
    mixed[0] = &p.form_part;
    out.form_part = poly_add(out.form_part, poly_map(detail::multilinear_poly(f.data(), Lg, Lh, mixed),
                                                      [&](const Element& e) { return e * factorial_inverse(j - 1); }));
  }
  out.one_part = poly_trim(out.one_part);
  out.form_part = poly_trim(out.form_part);
  return out;
}

struct GaugeRespectResult {
  GaugeElement h;
  MCPath pushed_path;
};

/// Given Af(exp gamma)(w0) = w1 in m (x) g, builds h in m (x) h with Af(h)(MC(Phi)(w0)) = MC(Phi)(w1)
/// by pushing the MC path of (gamma, w0) forward and integrating it.
inline GaugeRespectResult gauge_respect(const LInfMorphism& f, const NilpotentDGLA& Lg, const NilpotentDGLA& Lh, const Element& w0,
                                       const GaugeElement& gamma) {
  detail::require_pushforward(f, Lg, Lh);
  auto w = MCElement::make(Lg, w0);
  MCPath src = path_from_gauge(Lg, gamma, w);
  MCPath pushed = pushforward_path(f, Lg, Lh, src);
  auto defect = path_defect(Lh, pushed);
  check(defect.empty(), "pushed path is not an MC path: " + defect);
  Element p0 = mc_pushforward(f, Lg, Lh, w0), p1 = mc_pushforward(f, Lg, Lh, af_action(Lg, gamma, w0));
  check(path_at(pushed, 0) == p0 && path_at(pushed, 1) == p1, "pushed path endpoints differ from pushforwards");
  GaugeElement h = integrate_mc_path(Lh, pushed);
  check(af_action(Lh, h, p0) == p1, "integrated gauge does not carry the pushforwards");
  return {h, pushed};
}

}  // namespace defo
