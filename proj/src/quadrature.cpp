// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/quadrature.hpp"

#include <cmath>

namespace lss {

GaussLegendre::GaussLegendre(int order) : x(order), w(order) {
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[order - 1 - i] = w[i];
  }
}

namespace {

const GaussLegendre& gl16() {
  static const GaussLegendre rule(16);
  return rule;
}

cplx gl_apply(const std::function<cplx(double)>& f, double a, double b) {
  const GaussLegendre& g = gl16();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx s = 0;
  for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(mid + half * g.x[i]);
  return s * half;
}

cplx adapt(const std::function<cplx(double)>& f, double a, double b, cplx whole,
           double rel_tol, double abs_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const cplx left = gl_apply(f, a, mid);
  const cplx right = gl_apply(f, mid, b);
  const cplx sum = left + right;
  const double err = std::abs(sum - whole);
  if (depth >= 48 || err <= abs_tol + rel_tol * std::abs(sum)) return sum;
  return adapt(f, a, mid, left, rel_tol, 0.5 * abs_tol, depth + 1) +
         adapt(f, mid, b, right, rel_tol, 0.5 * abs_tol, depth + 1);
}

}  // namespace

cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                        double rel_tol, double abs_tol) {
  return adapt(f, a, b, gl_apply(f, a, b), rel_tol, abs_tol, 0);
}

}  // namespace lss
