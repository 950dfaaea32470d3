// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_MEDIA_HPP
#define LSS_MEDIA_HPP

#include <string>

#include "lss/grid.hpp"

namespace lss {

struct KernelCoeffs;  // kernel_op.hpp

enum class EquationKind { helmholtz, laplace };

/// The perturbation field q on member points: q = omega^2 m for Helmholtz,
/// q = V for the Laplace case. q vanishes identically on the buffer_b
/// outermost layers of the member set and ramps in smoothly over the next
/// two layers.
struct Medium {
  Field q;
  double omega = 0;
  EquationKind kind = EquationKind::helmholtz;
  int buffer_b = 6;

  // profile diagnostics filled by build_medium
  double min_c = 1, max_c = 1;  // velocity range (Helmholtz)
  double max_abs_v = 0;         // potential magnitude (Laplace)
};

struct MediumParams {
  double depth = 1.0 / 3.0;   // velocity contrast of bump/cavity profiles
  double sigma = 0.12;        // gaussian bump width
  double outer = 0.3;         // cavity outer half-width
  double thickness = 0.1;     // cavity wall thickness
  double smooth_pts = 3.0;    // profile smoothing width, in grid points
  double smooth_width = 0.032;  // physical floor of the smoothing width, so a
                                // frequency sweep scatters off a fixed medium
  double eta = 1.1;           // Laplace potential scale: max|V| = eta n^2
  double ball_radius = 0.25;  // laplace-ball profile radius
  std::array<double, 3> source = {0.2, 0.8, 0.5};  // Laplace delta source
};

/// Profile names: gaussian-bump, square-cavity, cube-cavity, l2ball-cavity,
/// l1ball-cavity (Helmholtz, q = omega^2 m), laplace-gaussian, laplace-ball
/// (q = V).
Medium build_medium(const Grid& grid, const std::string& name, const MediumParams& params,
                    double omega, int buffer_b);

/// u_I(x) = exp(i omega d.x) on member points; |d| must be 1.
Field incident_plane_wave(const Grid& grid, double omega, std::array<double, 3> direction);

/// Point source f with value 1/h^dim at the member point nearest pos.
Field delta_source(const Grid& grid, std::array<double, 3> pos);

/// Right-hand side g of the integral equation: K(-q u_I) for Helmholtz,
/// K f for Laplace (pass the source field as u_or_f).
Field build_rhs(const KernelCoeffs& coeffs, const Grid& grid, const Medium& medium,
                const Field& u_or_f);

}  // namespace lss

#endif  // LSS_MEDIA_HPP
