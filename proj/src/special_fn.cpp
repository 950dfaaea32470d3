// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/special_fn.hpp"

#include <cmath>
#include <stdexcept>

namespace lss {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Minimal double-double arithmetic, enough to run the Bessel series with
// ~31 significant digits. hi + lo with |lo| <= ulp(hi)/2.
struct DD {
  double hi = 0, lo = 0;
};

inline DD dd_from(double a) { return {a, 0.0}; }

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  const DD t = two_sum(s.hi, s.lo);
  return t;
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  const double err = std::fma(a, b, -p);
  return {p, err};
}

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return two_sum(p.hi, p.lo);
}

inline DD dd_mul_d(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return two_sum(p.hi, p.lo);
}

inline DD dd_div_d(DD a, double b) {
  const double q1 = a.hi / b;
  const DD p = two_prod(q1, b);
  const double r = ((a.hi - p.hi) - p.lo) + a.lo;
  const double q2 = r / b;
  return two_sum(q1, q2);
}

// Ascending series (x <= 16). The J0 series alternates with terms up to
// ~exp(x)/sqrt(2 pi x), so the sum is run in double-double.
std::pair<double, double> j0y0_series(double x) {
  const DD z = dd_mul_d(dd_mul_d(dd_from(x), x), 0.25);  // x^2/4
  DD term = dd_from(1.0);
  DD j_sum = term;
  DD y_sum = dd_from(0.0);  // sum_{k>=1} (-1)^{k+1} H_k z^k / (k!)^2
  DD harmonic = dd_from(0.0);
  for (int k = 1; k <= 200; ++k) {
    term = dd_div_d(dd_mul(term, z), static_cast<double>(-k) * k);
    harmonic = dd_add(harmonic, dd_div_d(dd_from(1.0), k));
    j_sum = dd_add(j_sum, term);
    y_sum = dd_add(y_sum, dd_mul_d(dd_mul(term, harmonic), -1.0));
    if (std::abs(term.hi) < 1e-34 * (std::abs(j_sum.hi) + 1.0)) break;
  }
  const double j0 = j_sum.hi + j_sum.lo;
  const double y0 =
      (2.0 / kPi) * ((std::log(0.5 * x) + kEulerGamma) * j0 + (y_sum.hi + y_sum.lo));
  return {j0, y0};
}

// Hankel asymptotic expansion (x > 16):
//   H0(x) ~ sqrt(2/(pi x)) e^{i(x - pi/4)} sum_k (-i)^k b_k / x^k,
//   b_k = ((2k-1)!!)^2 / (k! 8^k).
// Truncated at the smallest term; below 2e-15 of the envelope for x >= 16.
std::pair<double, double> j0y0_asymptotic(double x) {
  cplx sum(1.0, 0.0);
  double b = 1.0;
  double xk = 1.0;
  double prev = 1.0;
  cplx mi_pow(1.0, 0.0);
  const cplx minus_i(0.0, -1.0);
  for (int k = 1; k <= 60; ++k) {
    const double m = 2.0 * k - 1.0;
    b *= m * m / (8.0 * k);
    xk *= x;
    const double mag = b / xk;
    if (mag > prev) break;  // divergent tail reached
    prev = mag;
    mi_pow *= minus_i;
    sum += mi_pow * mag;
    if (mag < 1e-18) break;
  }
  // cos/sin of (x - pi/4) without explicit reduction of the shifted phase.
  const double c = std::cos(x), s = std::sin(x);
  const double inv_sqrt2 = 0.70710678118654752440084436210485;
  const cplx phase((c + s) * inv_sqrt2, (s - c) * inv_sqrt2);
  const cplx h = std::sqrt(2.0 / (kPi * x)) * phase * sum;
  return {h.real(), h.imag()};
}

}  // namespace

std::pair<double, double> bessel_j0_y0(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("bessel_j0_y0: argument must be positive and finite");
  }
  return x <= 16.0 ? j0y0_series(x) : j0y0_asymptotic(x);
}

cplx hankel1_0(double x) {
  const auto [j0, y0] = bessel_j0_y0(x);
  return cplx(j0, y0);
}

cplx green(const GreenKind& kind, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::domain_error("green: distance must be positive and finite");
  }
  if (kind.dim == 2) {
    if (!(kind.omega > 0.0)) {
      throw std::invalid_argument("green: 2D kernel requires omega > 0");
    }
    return cplx(0.0, 0.25) * hankel1_0(kind.omega * r);
  }
  if (kind.dim == 3) {
    const double g = 1.0 / (4.0 * kPi * r);
    if (kind.omega == 0.0) return cplx(g, 0.0);
    return g * std::polar(1.0, kind.omega * r);
  }
  throw std::invalid_argument("green: dim must be 2 or 3");
}

}  // namespace lss
