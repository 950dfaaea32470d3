// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_KRYLOV_HPP
#define LSS_KRYLOV_HPP

#include <functional>

#include "lss/kernel_op.hpp"
#include "lss/sparse_nd.hpp"

namespace lss {

using LinearOp = std::function<Field(const Field&)>;

struct SolveOptions {
  double tol = 1e-6;
  int maxit = 200;
};

struct GmresResult {
  Field x;
  int iterations = 0;
  std::vector<double> residual_history;  // relative Arnoldi residuals
  bool converged = false;
};

/// Full (non-restarted) GMRES with modified Gram-Schmidt and one
/// reorthogonalization pass. Happy breakdown counts as convergence; a NaN
/// out of the operator is a hard error.
GmresResult gmres(const LinearOp& op, const Field& rhs, const SolveOptions& opts);

/// The left-preconditioned map v -> P^{-1} [A; B] (I + K q) v of the
/// sparsified system; apply the same P^{-1} [A; B] to g before iterating.
LinearOp preconditioned_op(const KernelCoeffs& coeffs, const Grid& grid, const Medium& medium,
                           const Factorization& fact, const SparseSystem& ab);

/// One application of the preconditioner alone: P^{-1} [A; B] v.
Field apply_preconditioner(const Factorization& fact, const SparseSystem& ab, const Field& v);

}  // namespace lss

#endif  // LSS_KRYLOV_HPP
