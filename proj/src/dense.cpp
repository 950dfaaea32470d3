// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/dense.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <cmath>
#include <stdexcept>

namespace lss {

namespace {
lapack_complex_double* lp(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }
const lapack_complex_double* lp(const cplx* p) {
  return reinterpret_cast<const lapack_complex_double*>(p);
}
}  // namespace

DenseLU dense_lu(std::vector<cplx> a, int n) {
  DenseLU f;
  f.n = n;
  f.lu = std::move(a);
  f.ipiv.resize(n);
  const int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lp(f.lu.data()), n, f.ipiv.data());
  if (info < 0) throw std::runtime_error("dense_lu: bad argument to zgetrf");
  if (info > 0) throw std::runtime_error("dense_lu: exactly singular matrix");
  return f;
}

void dense_lu_solve(const DenseLU& lu, Field& rhs) {
  if (static_cast<int>(rhs.size()) != lu.n) {
    throw std::invalid_argument("dense_lu_solve: size mismatch");
  }
  const int info =
      LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', lu.n, 1, lp(lu.lu.data()), lu.n,
                     lu.ipiv.data(), lp(rhs.data()), lu.n);
  if (info != 0) throw std::runtime_error("dense_lu_solve: zgetrs failed");
}

void fix_phase(std::vector<cplx>& v) {
  size_t arg = 0;
  double best = -1;
  for (size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {  // strict: ties keep the lowest index
      best = a;
      arg = i;
    }
  }
  if (best <= 0) return;
  const cplx rot = std::conj(v[arg]) / best;
  for (cplx& z : v) z *= rot;
  v[arg] = cplx(std::abs(v[arg]), 0.0);  // kill residual imaginary dust
}

SmallestSV smallest_left_singular_vector(const cplx* m, int s, int p) {
  if (s > 27 || p < s) throw std::invalid_argument("smallest_left_singular_vector: need s <= 27 <= p");
  SmallestSV out;
  double frob = 0;
  for (int64_t k = 0; k < static_cast<int64_t>(s) * p; ++k) frob += std::norm(m[k]);
  frob = std::sqrt(frob);
  if (!(frob > 0) || !std::isfinite(frob)) {
    out.degenerate = true;
    out.alpha.assign(s, cplx(0));
    return out;
  }

  std::vector<cplx> a(m, m + static_cast<int64_t>(s) * p);
  std::vector<double> sv(s);
  std::vector<cplx> u(static_cast<int64_t>(s) * s);
  std::vector<double> superb(s);
  const int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'N', s, p, lp(a.data()), s,
                                  sv.data(), lp(u.data()), s, nullptr, 1, superb.data());
  if (info != 0) throw std::runtime_error("smallest_left_singular_vector: zgesvd failed");

  out.alpha.resize(s);
  for (int i = 0; i < s; ++i) out.alpha[i] = std::conj(u[static_cast<int64_t>(s) * (s - 1) + i]);
  out.sigma_min = sv[s - 1];
  fix_phase(out.alpha);
  return out;
}

std::pair<std::vector<cplx>, double> hermitian_smallest_eigpair(std::vector<cplx> g, int s) {
  std::vector<double> w(s);
  const int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'L', s, lp(g.data()), s, w.data());
  if (info != 0) throw std::runtime_error("hermitian_smallest_eigpair: zheev failed");
  std::vector<cplx> v(g.begin(), g.begin() + s);  // first column = smallest eigenvalue
  return {std::move(v), w[0]};
}

}  // namespace lss
