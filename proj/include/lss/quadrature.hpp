// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_QUADRATURE_HPP
#define LSS_QUADRATURE_HPP

#include <functional>

#include "lss/common.hpp"

namespace lss {

/// Gauss-Legendre nodes/weights on [-1, 1], computed at construction by
/// Newton iteration on the Legendre recurrence (no tabulated constants).
struct GaussLegendre {
  explicit GaussLegendre(int order);
  std::vector<double> x, w;
};

/// Adaptive bisection with a GL(16) whole-vs-halves error estimate.
/// Handles integrable endpoint singularities (r log r and milder) by
/// subdividing toward the offending end; depth is capped at 48.
cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                        double rel_tol, double abs_tol);

}  // namespace lss

#endif  // LSS_QUADRATURE_HPP
