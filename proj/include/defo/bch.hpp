#pragma once

#include <vector>

#include "defo/rational.hpp"

namespace defo {

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
inline std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc = 0;
    mpz_class binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += Rational(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / (m + 1);
  }
  return b;
}

/// log(exp x exp y) truncated after the homogeneous component of degree `depth`, via the
/// recursion
///   Z_1 = x + y,
///   (n+1) Z_{n+1} = 1/2 [x - y, Z_n]
///       + sum_{p >= 1, 2p <= n} B_{2p}/(2p)! sum_{k_1+..+k_{2p} = n} [Z_{k_1}, [.., [Z_{k_{2p}}, x + y]..]].
/// V needs +, -, * Rational; br(a, b) is the Lie bracket.
template <class V, class Bracket>
V bch_series(const V& x, const V& y, Bracket&& br, int depth) {
  const V zero = x * Rational(0);
  const V s = x + y;
  const V diff = x - y;
  auto bern = bernoulli_numbers(depth + 1);
  std::vector<V> z(depth + 1, zero);
  if (depth >= 1) z[1] = s;
  for (int n = 1; n < depth; ++n) {
    V next = br(diff, z[n]) * Rational(1, 2);
    // t[r][m] = sum over compositions k_1..k_r of m of [Z_{k_1}, [.., [Z_{k_r}, s]..]]
    int max_r = n - (n % 2);
    std::vector<std::vector<V>> t(max_r + 1, std::vector<V>(n + 1, zero));
    t[0][0] = s;
    for (int r = 1; r <= max_r; ++r)
      for (int m = r; m <= n; ++m) {
        V acc = zero;
        for (int k = 1; k <= m - (r - 1); ++k)
          if (m - k >= r - 1) acc = acc + br(z[k], t[r - 1][m - k]);
        t[r][m] = acc;
      }
    for (int p = 1; 2 * p <= n; ++p)
      next = next + t[2 * p][n] * (bern[2 * p] * factorial_inverse(2 * p));
    z[n + 1] = next * Rational(1, n + 1);
  }
  V out = zero;
  for (int n = 1; n <= depth; ++n) out = out + z[n];
  return out;
}

}  // namespace defo
