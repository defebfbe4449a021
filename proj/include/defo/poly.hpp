#pragma once

#include <vector>

#include "defo/rational.hpp"

namespace defo {

/// Polynomial sum_i coeffs[i] t^i with coefficients in a Q-module V
/// (V needs +, and * by Rational).
template <class V>
struct Poly {
  std::vector<V> coeffs;

  std::size_t size() const { return coeffs.size(); }
  bool operator==(const Poly&) const = default;
};

/// Antiderivative with zero constant term. Needs at least one coefficient to know the zero of V.
template <class V>
Poly<V> poly_integrate(const Poly<V>& p) {
  Poly<V> r;
  if (p.coeffs.empty()) return r;
  r.coeffs.push_back(p.coeffs[0] * Rational(0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    r.coeffs.push_back(p.coeffs[i] * Rational(1, static_cast<long>(i + 1)));
  return r;
}

template <class V>
Poly<V> poly_derivative(const Poly<V>& p) {
  Poly<V> r;
  for (std::size_t i = 1; i < p.coeffs.size(); ++i)
    r.coeffs.push_back(p.coeffs[i] * Rational(static_cast<long>(i)));
  if (r.coeffs.empty() && !p.coeffs.empty()) r.coeffs.push_back(p.coeffs[0] * Rational(0));
  return r;
}

template <class V>
V poly_eval(const Poly<V>& p, const Rational& t) {
  V acc = p.coeffs.back();
  for (std::size_t i = p.coeffs.size() - 1; i-- > 0;) acc = acc * t + p.coeffs[i];
  return acc;
}

/// Polynomial differential form on the line: even(t) + odd(t) dt.
template <class V>
struct PolyForm {
  Poly<V> even;
  Poly<V> odd;
  bool operator==(const PolyForm&) const = default;
};

/// d(f(t)) = f'(t) dt; d(g(t) dt) = 0.
template <class V>
PolyForm<V> poly_form_d(const PolyForm<V>& w) {
  PolyForm<V> r;
  if (!w.even.coeffs.empty()) {
    r.odd = poly_derivative(w.even);
    r.even.coeffs.assign(1, w.even.coeffs[0] * Rational(0));
  }
  return r;
}

}  // namespace defo
