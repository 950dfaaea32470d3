// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/media.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lss/kernel_op.hpp"

namespace lss {

namespace {

double quintic_step(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

// smooth 0 -> 1 transition centered at edge, over total width w
double edge_step(double rho, double edge, double w) {
  return quintic_step((rho - edge) / w + 0.5);
}

// Chessboard (infinity-norm) distance to the nearest non-member lattice
// point, with everything outside the box counting as non-member. Two-pass
// chamfer over the full 3^dim neighborhood is exact for this metric.
std::vector<int> layer_depth(const Grid& g) {
  const int64_t size = pow_int(g.n, g.dim);
  const int big = std::numeric_limits<int>::max() / 2;
  std::vector<int> dist(size, big);
  const int lo2 = g.dim == 3 ? -1 : 0, hi2 = g.dim == 3 ? 1 : 0;

  auto sweep = [&](bool forward) {
    for (int64_t step = 0; step < size; ++step) {
      const int64_t lin = forward ? step : size - 1 - step;
      if (!g.member[lin]) {
        dist[lin] = 0;
        continue;
      }
      Index c{0, 0, 0};
      int64_t rem = lin;
      for (int d = g.dim - 1; d >= 0; --d) {
        c[d] = static_cast<int>(rem % g.n);
        rem /= g.n;
      }
      int best = dist[lin];
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
          for (int e = lo2; e <= hi2; ++e) {
            if (a == 0 && b == 0 && e == 0) continue;
            // only the causal half of the neighborhood for this sweep
            const int sgn = a != 0 ? a : (b != 0 ? b : e);
            if ((forward && sgn > 0) || (!forward && sgn < 0)) continue;
            const Index j{c[0] + a, c[1] + b, c[2] + e};
            const int dj = g.in_box(j) ? dist[g.lattice_index(j)] : 0;
            best = std::min(best, dj + 1);
          }
      dist[lin] = best;
    }
  };
  sweep(true);
  sweep(false);
  return dist;
}

}  // namespace

Medium build_medium(const Grid& grid, const std::string& name, const MediumParams& params,
                    double omega, int buffer_b) {
  const bool laplace = name.rfind("laplace-", 0) == 0;
  if (!laplace && !(omega > 0.0)) {
    throw std::invalid_argument("medium: Helmholtz profiles require omega > 0");
  }
  if (laplace && grid.dim != 3) {
    throw std::invalid_argument("medium: Laplace profiles are 3D only");
  }
  if (buffer_b < 2) throw std::invalid_argument("medium: buffer_b must be >= 2");
  if (params.depth < 0.0 || params.depth > 0.3334) {
    throw std::invalid_argument("medium: depth must lie in [0, 1/3]");
  }

  enum class Profile { bump, cavity_linf, cavity_l2, cavity_l1, lap_gauss, lap_ball };
  Profile profile;
  if (name == "gaussian-bump") profile = Profile::bump;
  else if (name == "square-cavity" || name == "cube-cavity") profile = Profile::cavity_linf;
  else if (name == "l2ball-cavity") profile = Profile::cavity_l2;
  else if (name == "l1ball-cavity") profile = Profile::cavity_l1;
  else if (name == "laplace-gaussian") profile = Profile::lap_gauss;
  else if (name == "laplace-ball") profile = Profile::lap_ball;
  else throw std::invalid_argument("medium: unknown profile '" + name + "'");

  Medium med;
  med.kind = laplace ? EquationKind::laplace : EquationKind::helmholtz;
  med.omega = laplace ? 0.0 : omega;
  med.buffer_b = buffer_b;
  med.q.resize(grid.num_members);

  const std::vector<int> depth_layers = layer_depth(grid);
  const double w = std::max(params.smooth_pts * grid.h, params.smooth_width);
  const double inner = params.outer - params.thickness;
  const double vscale = params.eta * static_cast<double>(grid.n) * grid.n;

  med.min_c = 1.0;
  med.max_c = laplace ? 1.0 : 0.0;
  for (int64_t k = 0; k < grid.num_members; ++k) {
    const Index& idx = grid.lattice_of[k];
    double l2 = 0, l1 = 0, linf = 0;
    for (int d = 0; d < grid.dim; ++d) {
      const double c = grid.coord(idx[d]) - 0.5;
      l2 += c * c;
      l1 += std::abs(c);
      linf = std::max(linf, std::abs(c));
    }
    l2 = std::sqrt(l2);

    const int layers = depth_layers[grid.lattice_index(idx)];
    double taper;
    if (layers <= buffer_b) taper = 0.0;
    else taper = quintic_step((layers - buffer_b) / 2.0);

    double value;  // m for Helmholtz, V for Laplace
    switch (profile) {
      case Profile::bump: {
        const double phi = std::exp(-l2 * l2 / (2.0 * params.sigma * params.sigma));
        const double c = 1.0 - params.depth * phi;
        value = 1.0 - 1.0 / (c * c);
        break;
      }
      case Profile::cavity_linf:
      case Profile::cavity_l2:
      case Profile::cavity_l1: {
        const double rho = profile == Profile::cavity_linf ? linf
                         : profile == Profile::cavity_l2   ? l2
                                                           : l1;
        const double s = edge_step(rho, inner, w) - edge_step(rho, params.outer, w);
        const double c = 1.0 - params.depth * s;
        value = 1.0 - 1.0 / (c * c);
        break;
      }
      case Profile::lap_gauss:
        value = -vscale * std::exp(-l2 * l2 / (2.0 * params.sigma * params.sigma));
        break;
      case Profile::lap_ball:
        value = -vscale * (1.0 - edge_step(l2, params.ball_radius, w));
        break;
    }
    value *= taper;

    if (laplace) {
      med.q[k] = cplx(value, 0.0);
      med.max_abs_v = std::max(med.max_abs_v, std::abs(value));
    } else {
      med.q[k] = cplx(omega * omega * value, 0.0);
      const double c = 1.0 / std::sqrt(1.0 - value);
      med.min_c = std::min(med.min_c, c);
      med.max_c = std::max(med.max_c, c);
    }
  }
  return med;
}

Field incident_plane_wave(const Grid& grid, double omega, std::array<double, 3> direction) {
  double norm = 0;
  for (int d = 0; d < grid.dim; ++d) norm += direction[d] * direction[d];
  norm = std::sqrt(norm);
  if (!(norm > 0)) throw std::invalid_argument("incident wave: zero direction");
  Field u(grid.num_members);
  for (int64_t k = 0; k < grid.num_members; ++k) {
    double phase = 0;
    for (int d = 0; d < grid.dim; ++d) {
      phase += (direction[d] / norm) * grid.coord(grid.lattice_of[k][d]);
    }
    u[k] = std::polar(1.0, omega * phase);
  }
  return u;
}

Field delta_source(const Grid& grid, std::array<double, 3> pos) {
  int64_t best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (int64_t k = 0; k < grid.num_members; ++k) {
    double d2 = 0;
    for (int d = 0; d < grid.dim; ++d) {
      const double c = grid.coord(grid.lattice_of[k][d]) - pos[d];
      d2 += c * c;
    }
    if (d2 < best_d) {
      best_d = d2;
      best = k;
    }
  }
  Field f(grid.num_members, cplx(0));
  f[best] = cplx(std::pow(1.0 / grid.h, grid.dim), 0.0);
  return f;
}

Field build_rhs(const KernelCoeffs& coeffs, const Grid& grid, const Medium& medium,
                const Field& u_or_f) {
  if (static_cast<int64_t>(u_or_f.size()) != grid.num_members) {
    throw std::invalid_argument("build_rhs: field size mismatch");
  }
  if (medium.kind == EquationKind::laplace) return apply_K(coeffs, grid, u_or_f);
  Field w(u_or_f.size());
  for (size_t k = 0; k < w.size(); ++k) w[k] = -medium.q[k] * u_or_f[k];
  return apply_K(coeffs, grid, w);
}

}  // namespace lss
