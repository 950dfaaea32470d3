// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_SPECIAL_FN_HPP
#define LSS_SPECIAL_FN_HPP

#include <utility>

#include "lss/common.hpp"

namespace lss {

/// Which free-space Green's function: dim in {2,3}; omega = 0 selects the
/// Laplace kernel and is valid only with dim = 3.
struct GreenKind {
  int dim = 2;
  double omega = 1.0;
};

/// Simultaneous J0(x), Y0(x) for x > 0.
///
/// Small arguments (x <= 16) use the ascending series with double-double
/// accumulation to absorb the alternating-series cancellation; larger
/// arguments use the Hankel asymptotic expansion. Relative accuracy is a
/// few 1e-15 measured against the oscillation envelope sqrt(2/(pi x)).
std::pair<double, double> bessel_j0_y0(double x);

/// H^(1)_0(x) = J0(x) + i Y0(x), x > 0.
cplx hankel1_0(double x);

/// Free-space Green's function of -(Laplacian + omega^2) at distance r > 0:
///   dim=2:            (i/4) H^(1)_0(omega r)
///   dim=3, omega > 0: exp(i omega r) / (4 pi r)
///   dim=3, omega = 0: 1 / (4 pi r)
cplx green(const GreenKind& kind, double r);

}  // namespace lss

#endif  // LSS_SPECIAL_FN_HPP
