// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/krylov.hpp"

#include <cmath>

#include "doctest.h"
#include "lss/dense.hpp"
#include "lss/driver.hpp"
#include "lss/rng.hpp"

using namespace lss;

namespace {

Field random_field(int64_t n, uint64_t seed) {
  SplitMix64 rng(seed);
  Field v(n);
  for (cplx& z : v) z = rng.gaussian();
  return v;
}

}  // namespace

TEST_CASE("gmres on the identity converges in one iteration") {
  const Field rhs = random_field(40, 2);
  const GmresResult r = gmres([](const Field& v) { return v; }, rhs, {});
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(rel_diff(r.x, rhs) <= 1e-14);
}

TEST_CASE("gmres matches a dense direct solve on a random system") {
  const int n = 50;
  SplitMix64 rng(77);
  std::vector<cplx> a(n * n);
  for (cplx& z : a) z = 0.3 * rng.gaussian();
  for (int i = 0; i < n; ++i) a[i + n * i] += cplx(4.0, 0.5);  // diagonally dominant

  const Field rhs = random_field(n, 5);
  const LinearOp op = [&](const Field& v) {
    Field out(n, cplx(0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out[i] += a[i + n * j] * v[j];
    return out;
  };
  SolveOptions opts;
  opts.tol = 1e-12;
  opts.maxit = 60;
  const GmresResult r = gmres(op, rhs, opts);
  CHECK(r.converged);

  Field direct = rhs;
  dense_lu_solve(dense_lu(a, n), direct);
  CHECK(rel_diff(r.x, direct) <= 1e-8);
}

TEST_CASE("gmres residual history is nonincreasing") {
  const int n = 64;
  SplitMix64 rng(123);
  std::vector<cplx> a(n * n);
  for (cplx& z : a) z = rng.gaussian();
  for (int i = 0; i < n; ++i) a[i + n * i] += cplx(2.5, 0.0);
  const LinearOp op = [&](const Field& v) {
    Field out(n, cplx(0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out[i] += a[i + n * j] * v[j];
    return out;
  };
  SolveOptions opts;
  opts.tol = 1e-10;
  opts.maxit = 64;
  const GmresResult r = gmres(op, random_field(n, 9), opts);
  for (size_t i = 1; i < r.residual_history.size(); ++i) {
    CHECK(r.residual_history[i] <= r.residual_history[i - 1] * (1.0 + 1e-12));
  }
}

TEST_CASE("gmres surfaces non-convergence and rejects bad inputs") {
  // rotation-like operator that GMRES cannot crack in 3 iterations
  const int n = 32;
  const LinearOp shift = [n](const Field& v) {
    Field out(n);
    for (int i = 0; i < n; ++i) out[i] = v[(i + 1) % n];
    return out;
  };
  SolveOptions opts;
  opts.tol = 1e-12;
  opts.maxit = 3;
  Field rhs(n, cplx(0));
  rhs[0] = 1.0;
  const GmresResult r = gmres(shift, rhs, opts);
  CHECK(!r.converged);
  CHECK(r.iterations == 3);

  opts.tol = 0.0;
  CHECK_THROWS_AS(gmres(shift, rhs, opts), std::invalid_argument);

  SolveOptions ok;
  const LinearOp nan_op = [n](const Field&) {
    return Field(n, cplx(std::nan(""), 0.0));
  };
  CHECK_THROWS_AS(gmres(nan_op, rhs, ok), std::runtime_error);
}

TEST_CASE("gmres handles happy breakdown as convergence") {
  const LinearOp diag = [](const Field& v) {
    Field out = v;
    out[0] *= 2.0;
    out[1] *= 3.0;
    return out;
  };
  Field rhs(2, cplx(0));
  rhs[0] = 4.0;
  const GmresResult r = gmres(diag, rhs, {});
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(std::abs(r.x[0] - cplx(2.0, 0.0)) <= 1e-12);
}

TEST_CASE("preconditioned operator is the identity when q vanishes") {
  const Grid grid = build_grid(2, 12, Shape::rectangle);
  const Classification cls = classify(grid);
  const double omega = 2.0 * kPi * 12 / 6.0;
  MediumParams p0;
  p0.depth = 0.0;
  const Medium med = build_medium(grid, "gaussian-bump", p0, omega, 3);
  const KernelCoeffs coeffs = quadrature_coeffs(grid, omega, EquationKind::helmholtz);
  const StencilSet st = build_stencils(coeffs, grid, cls, med, false, 36, 1);
  auto [p, ab] = assemble(st, med, grid, cls);
  const NdOrdering order = nd_order(grid, cls);
  const Factorization fact = factorize(p, order);
  const LinearOp op = preconditioned_op(coeffs, grid, med, fact, ab);

  const Field v = random_field(grid.num_members, 3);
  CHECK(rel_diff(op(v), v) <= 1e-9);
}

TEST_CASE("preconditioned operator is linear") {
  const Grid grid = build_grid(2, 12, Shape::rectangle);
  const Classification cls = classify(grid);
  const double omega = 2.0 * kPi * 12 / 6.0;
  const Medium med = build_medium(grid, "gaussian-bump", {}, omega, 3);
  const KernelCoeffs coeffs = quadrature_coeffs(grid, omega, EquationKind::helmholtz);
  const StencilSet st = build_stencils(coeffs, grid, cls, med, false, 36, 1);
  auto [p, ab] = assemble(st, med, grid, cls);
  const NdOrdering order = nd_order(grid, cls);
  const Factorization fact = factorize(p, order);
  const LinearOp op = preconditioned_op(coeffs, grid, med, fact, ab);

  const Field u = random_field(grid.num_members, 4);
  const Field v = random_field(grid.num_members, 6);
  const cplx a(1.7, -0.4);
  Field combo(u.size());
  for (size_t i = 0; i < u.size(); ++i) combo[i] = a * u[i] + v[i];
  const Field lhs = op(combo);
  const Field mu = op(u);
  const Field mv = op(v);
  double num = 0, den = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    num += std::norm(lhs[i] - (a * mu[i] + mv[i]));
    den += std::norm(lhs[i]);
  }
  CHECK(std::sqrt(num / den) <= 1e-12);
}

TEST_CASE("preconditioned gmres reproduces the dense solution at n = 8") {
  const Grid grid = build_grid(2, 8, Shape::rectangle);
  const Classification cls = classify(grid);
  const double omega = 2.0 * kPi * 8 / 6.0;
  const Medium med = build_medium(grid, "gaussian-bump", {}, omega, 2);
  const KernelCoeffs coeffs = quadrature_coeffs(grid, omega, EquationKind::helmholtz);
  const StencilSet st = build_stencils(coeffs, grid, cls, med, false, 36, 1);
  auto [p, ab] = assemble(st, med, grid, cls);
  const Factorization fact = factorize(p, nd_order(grid, cls));
  const LinearOp op = preconditioned_op(coeffs, grid, med, fact, ab);

  const Field u_inc = incident_plane_wave(grid, omega, {0, -1, 0});
  const Field g = build_rhs(coeffs, grid, med, u_inc);
  const GmresResult r = gmres(op, apply_preconditioner(fact, ab, g), {});
  CHECK(r.converged);

  Field dense_u = g;
  dense_lu_solve(dense_lu(assemble_dense(coeffs, grid, med),
                          static_cast<int>(grid.num_members)),
                 dense_u);
  CHECK(rel_diff(r.x, dense_u) <= 1e-5);
}
