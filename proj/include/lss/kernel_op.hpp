// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_KERNEL_OP_HPP
#define LSS_KERNEL_OP_HPP

#include <memory>

#include "lss/fft.hpp"
#include "lss/grid.hpp"
#include "lss/media.hpp"

namespace lss {

/// Translation-invariant quadrature weights k_t of the Nystrom scheme:
/// k_t = G(h t) h^dim away from the origin and the exact cell integral of G
/// over the singular cell at t = 0. The zero-padded, periodized spectrum of
/// the table backs the FFT application of K.
struct KernelCoeffs {
  int dim = 2;
  int n = 0;
  double h = 0;
  double omega = 0;
  EquationKind kind = EquationKind::helmholtz;

  std::vector<cplx> table;  // offsets t in [-(n-1), n-1]^dim, lexicographic
  int m_pad = 0;            // padded transform size per dimension (= 2n)
  std::vector<cplx> spectrum;
  std::shared_ptr<const FftPlan> plan;

  cplx at(const Index& t) const {
    int64_t r = t[0] + (n - 1);
    for (int d = 1; d < dim; ++d) r = r * (2 * n - 1) + (t[d] + (n - 1));
    return table[r];
  }
  cplx k0() const { return at({0, 0, 0}); }
};

KernelCoeffs quadrature_coeffs(const Grid& grid, double omega, EquationKind kind);

/// (K v)_i = sum over member j of k_{i-j} v_j, via zero-padded FFT
/// convolution (exact up to roundoff; the padding removes wrap-around).
Field apply_K(const KernelCoeffs& coeffs, const Grid& grid, const Field& v);

/// O(N^2) direct summation; validation oracle. Guarded to N <= 1e4.
Field apply_K_direct(const KernelCoeffs& coeffs, const Grid& grid, const Field& v);

/// The forward operator (I + K q) u.
Field forward_apply(const KernelCoeffs& coeffs, const Grid& grid, const Medium& medium,
                    const Field& u);

}  // namespace lss

#endif  // LSS_KERNEL_OP_HPP
