// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_DENSE_HPP
#define LSS_DENSE_HPP

#include <utility>

#include "lss/common.hpp"

namespace lss {

/// Dense column-major complex LU (partial pivoting), for the validation
/// oracle and small test systems.
struct DenseLU {
  int n = 0;
  std::vector<cplx> lu;    // n x n, col-major
  std::vector<int> ipiv;
};

DenseLU dense_lu(std::vector<cplx> a, int n);
void dense_lu_solve(const DenseLU& lu, Field& rhs);

struct SmallestSV {
  std::vector<cplx> alpha;  // row vector, unit norm, phase-fixed
  double sigma_min = 0;
  bool degenerate = false;
};

/// Left singular vector of the smallest singular value of the s x p matrix M
/// (col-major, s <= p), returned conjugated so that alpha * M has norm
/// sigma_min. The phase is fixed by making the largest-modulus entry real
/// positive. An (exactly or numerically) zero M signals degenerate and the
/// caller applies its fallback.
SmallestSV smallest_left_singular_vector(const cplx* m, int s, int p);

/// Eigenvector of the smallest eigenvalue of a Hermitian s x s matrix
/// (col-major); returns (vector, eigenvalue).
std::pair<std::vector<cplx>, double> hermitian_smallest_eigpair(std::vector<cplx> g, int s);

/// Multiplies entries by a unit phase making the largest-modulus entry real
/// positive (ties broken by lowest index). No-op on the zero vector.
void fix_phase(std::vector<cplx>& v);

}  // namespace lss

#endif  // LSS_DENSE_HPP
