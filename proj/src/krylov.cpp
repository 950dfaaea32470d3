// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/krylov.hpp"

#include <cmath>
#include <stdexcept>

namespace lss {

namespace {

cplx dotc(const Field& a, const Field& b) {  // <a, b> = a^H b
  cplx s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void check_finite(const Field& v) {
  for (const cplx& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::runtime_error("gmres: operator produced a non-finite value");
    }
  }
}

}  // namespace

GmresResult gmres(const LinearOp& op, const Field& rhs, const SolveOptions& opts) {
  if (!(opts.tol > 0.0 && opts.tol < 1.0)) throw std::invalid_argument("gmres: tol out of range");
  const int64_t n = static_cast<int64_t>(rhs.size());
  GmresResult res;
  res.x.assign(n, cplx(0));

  const double beta = norm2(rhs);
  if (beta == 0.0) {
    res.converged = true;
    res.residual_history.push_back(0.0);
    return res;
  }

  const int m = opts.maxit;
  std::vector<Field> basis;
  basis.reserve(m + 1);
  {
    Field v0 = rhs;
    for (cplx& z : v0) z /= beta;
    basis.push_back(std::move(v0));
  }
  // Hessenberg in packed columns, Givens-rotated on the fly
  std::vector<std::vector<cplx>> hcols;
  std::vector<cplx> gc(m), gs(m);
  std::vector<cplx> g(m + 1, cplx(0));
  g[0] = beta;

  int k = 0;
  for (; k < m; ++k) {
    Field w = op(basis[k]);
    check_finite(w);

    std::vector<cplx> h(k + 2, cplx(0));
    for (int pass = 0; pass < 2; ++pass) {  // MGS with one reorthogonalization
      for (int j = 0; j <= k; ++j) {
        const cplx c = dotc(basis[j], w);
        h[j] += c;
        for (int64_t i = 0; i < n; ++i) w[i] -= c * basis[j][i];
      }
    }
    const double wnorm = norm2(w);
    h[k + 1] = wnorm;

    // apply accumulated rotations, then the new one
    for (int j = 0; j < k; ++j) {
      const cplx t = gc[j] * h[j] + gs[j] * h[j + 1];
      h[j + 1] = -std::conj(gs[j]) * h[j] + std::conj(gc[j]) * h[j + 1];
      h[j] = t;
    }
    {
      const double a = std::abs(h[k]), b = std::abs(h[k + 1]);
      if (b == 0.0) {
        gc[k] = 1;
        gs[k] = 0;
      } else if (a == 0.0) {
        gc[k] = 0;
        gs[k] = h[k + 1] / b;  // unitary by construction
      } else {
        const double r = std::hypot(a, b);
        gc[k] = a / r;
        gs[k] = (h[k] / a) * std::conj(h[k + 1]) / r;
      }
      h[k] = gc[k] * h[k] + gs[k] * h[k + 1];
      h[k + 1] = 0;
      const cplx t = gc[k] * g[k] + gs[k] * g[k + 1];
      g[k + 1] = -std::conj(gs[k]) * g[k] + std::conj(gc[k]) * g[k + 1];
      g[k] = t;
    }
    hcols.push_back(std::move(h));

    const double rel = std::abs(g[k + 1]) / beta;
    res.residual_history.push_back(rel);
    if (rel <= opts.tol || wnorm <= 1e-300) {
      // tolerance reached, or happy breakdown (the Krylov space became
      // invariant, in which case rel is already 0)
      ++k;
      res.converged = rel <= opts.tol;
      break;
    }
    Field v = std::move(w);
    for (cplx& z : v) z /= wnorm;
    basis.push_back(std::move(v));
  }
  res.iterations = k;

  // back-substitute the k x k triangular system for the coefficients
  std::vector<cplx> ycoef(k);
  for (int i = k - 1; i >= 0; --i) {
    cplx acc = g[i];
    for (int j = i + 1; j < k; ++j) acc -= hcols[j][i] * ycoef[j];
    ycoef[i] = acc / hcols[i][i];
  }
  for (int j = 0; j < k; ++j) {
    for (int64_t i = 0; i < n; ++i) res.x[i] += ycoef[j] * basis[j][i];
  }
  return res;
}

Field apply_preconditioner(const Factorization& fact, const SparseSystem& ab, const Field& v) {
  return solve(fact, apply_AB(ab, v));
}

LinearOp preconditioned_op(const KernelCoeffs& coeffs, const Grid& grid, const Medium& medium,
                           const Factorization& fact, const SparseSystem& ab) {
  return [&coeffs, &grid, &medium, &fact, &ab](const Field& v) {
    return apply_preconditioner(fact, ab, forward_apply(coeffs, grid, medium, v));
  };
}

}  // namespace lss
