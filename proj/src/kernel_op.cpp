// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/kernel_op.hpp"

#include <cmath>
#include <stdexcept>

#include "lss/quadrature.hpp"
#include "lss/special_fn.hpp"

namespace lss {

namespace {

// integral_0^1 t exp(i a t) dt; series below a = 0.5 to dodge the
// cancellation between the two closed-form terms.
cplx moment1(double a) {
  if (std::abs(a) < 0.5) {
    cplx sum = 0, term = 0.5;
    const cplx ia(0.0, a);
    sum = term;
    for (int k = 1; k <= 30; ++k) {
      term *= ia * (k + 1.0) / (static_cast<double>(k) * (k + 2.0));
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  const cplx ia(0.0, a);
  const cplx eia = std::polar(1.0, a);
  return eia / ia + (eia - 1.0) / (a * a);
}

// Exact integral of G over the h-cell centered at the origin.
cplx singular_cell_integral(int dim, double h, double omega, EquationKind kind) {
  if (dim == 2) {
    const GreenKind gk{2, omega};
    // eight congruent wedges of the square, polar coordinates
    auto wedge = [&](double theta) {
      const double rmax = 0.5 * h / std::cos(theta);
      auto radial = [&](double r) { return green(gk, r) * r; };
      return integrate_adaptive(radial, 0.0, rmax, 1e-12, 1e-18 * h * h);
    };
    return 8.0 * integrate_adaptive(wedge, 0.0, kPi / 4.0, 1e-11, 1e-18 * h * h);
  }
  // 3D: six pyramids over the cube faces. Along each ray to a face point p,
  // integral_0^1 G(t |p|) t^2 |p x n| dt reduces to moment1, which removes
  // the 1/r singularity exactly.
  auto face = [&](double u) {
    auto inner = [&](double v) {
      const double rr = std::sqrt(u * u + v * v + 0.25 * h * h);
      const cplx base = (kind == EquationKind::laplace) ? cplx(0.5, 0.0) : moment1(omega * rr);
      return (0.5 * h) / (4.0 * kPi * rr) * base;
    };
    return integrate_adaptive(inner, 0.0, 0.5 * h, 1e-12, 1e-18 * h * h);
  };
  return 24.0 * integrate_adaptive(face, 0.0, 0.5 * h, 1e-11, 1e-18 * h * h);
}

}  // namespace

KernelCoeffs quadrature_coeffs(const Grid& grid, double omega, EquationKind kind) {
  if (kind == EquationKind::helmholtz && !(omega > 0.0)) {
    throw std::invalid_argument("kernel: Helmholtz requires omega > 0");
  }
  if (kind == EquationKind::laplace && (omega != 0.0 || grid.dim != 3)) {
    throw std::invalid_argument("kernel: Laplace kernel is 3D with omega = 0");
  }

  KernelCoeffs c;
  c.dim = grid.dim;
  c.n = grid.n;
  c.h = grid.h;
  c.omega = omega;
  c.kind = kind;

  const int n = grid.n, w = 2 * n - 1;
  const GreenKind gk{grid.dim, omega};
  const double hd = std::pow(grid.h, grid.dim);
  c.table.assign(pow_int(w, grid.dim), cplx(0));
  const int lo2 = grid.dim == 3 ? -(n - 1) : 0, hi2 = grid.dim == 3 ? n - 1 : 0;
  for (int a = -(n - 1); a <= n - 1; ++a)
    for (int b = -(n - 1); b <= n - 1; ++b)
      for (int d = lo2; d <= hi2; ++d) {
        int64_t idx = a + (n - 1);
        idx = idx * w + (b + (n - 1));
        if (grid.dim == 3) idx = idx * w + (d + (n - 1));
        if (a == 0 && b == 0 && d == 0) continue;
        const double r = grid.h * std::sqrt(double(a) * a + double(b) * b + double(d) * d);
        c.table[idx] = green(gk, r) * hd;
      }
  {
    int64_t idx0 = (n - 1);
    idx0 = idx0 * w + (n - 1);
    if (grid.dim == 3) idx0 = idx0 * w + (n - 1);
    c.table[idx0] = singular_cell_integral(grid.dim, grid.h, omega, kind);
  }

  // periodize onto the 2n lattice and transform once
  c.m_pad = 2 * n;
  c.plan = std::make_shared<const FftPlan>(grid.dim, c.m_pad);
  c.spectrum.assign(pow_int(c.m_pad, grid.dim), cplx(0));
  for (int a = -(n - 1); a <= n - 1; ++a)
    for (int b = -(n - 1); b <= n - 1; ++b)
      for (int d = lo2; d <= hi2; ++d) {
        int64_t dst = (a + c.m_pad) % c.m_pad;
        dst = dst * c.m_pad + (b + c.m_pad) % c.m_pad;
        if (grid.dim == 3) dst = dst * c.m_pad + (d + c.m_pad) % c.m_pad;
        c.spectrum[dst] = c.at({a, b, d});
      }
  c.plan->forward(c.spectrum.data());
  return c;
}

Field apply_K(const KernelCoeffs& coeffs, const Grid& grid, const Field& v) {
  if (static_cast<int64_t>(v.size()) != grid.num_members) {
    throw std::invalid_argument("apply_K: field size mismatch");
  }
  const int m = coeffs.m_pad;
  std::vector<cplx> work(coeffs.spectrum.size(), cplx(0));
  for (int64_t k = 0; k < grid.num_members; ++k) {
    const Index& i = grid.lattice_of[k];
    int64_t slot = i[0];
    slot = slot * m + i[1];
    if (grid.dim == 3) slot = slot * m + i[2];
    work[slot] = v[k];
  }
  coeffs.plan->forward(work.data());
  for (size_t k = 0; k < work.size(); ++k) work[k] *= coeffs.spectrum[k];
  coeffs.plan->inverse(work.data());
  Field out(grid.num_members);
  for (int64_t k = 0; k < grid.num_members; ++k) {
    const Index& i = grid.lattice_of[k];
    int64_t slot = i[0];
    slot = slot * m + i[1];
    if (grid.dim == 3) slot = slot * m + i[2];
    out[k] = work[slot];
  }
  return out;
}

Field apply_K_direct(const KernelCoeffs& coeffs, const Grid& grid, const Field& v) {
  if (grid.num_members > 10000) {
    throw std::invalid_argument("apply_K_direct: guarded to N <= 1e4");
  }
  if (static_cast<int64_t>(v.size()) != grid.num_members) {
    throw std::invalid_argument("apply_K_direct: field size mismatch");
  }
  Field out(grid.num_members, cplx(0));
  for (int64_t i = 0; i < grid.num_members; ++i) {
    const Index& ii = grid.lattice_of[i];
    cplx acc = 0;
    for (int64_t j = 0; j < grid.num_members; ++j) {
      const Index& jj = grid.lattice_of[j];
      acc += coeffs.at({ii[0] - jj[0], ii[1] - jj[1], ii[2] - jj[2]}) * v[j];
    }
    out[i] = acc;
  }
  return out;
}

Field forward_apply(const KernelCoeffs& coeffs, const Grid& grid, const Medium& medium,
                    const Field& u) {
  if (u.size() != medium.q.size() || static_cast<int64_t>(u.size()) != grid.num_members) {
    throw std::invalid_argument("forward: field size mismatch");
  }
  Field qu(u.size());
  for (size_t k = 0; k < u.size(); ++k) qu[k] = medium.q[k] * u[k];
  Field out = apply_K(coeffs, grid, qu);
  for (size_t k = 0; k < u.size(); ++k) out[k] += u[k];
  return out;
}

}  // namespace lss
