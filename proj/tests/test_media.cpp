// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/media.hpp"

#include <cmath>

#include "doctest.h"
#include "lss/kernel_op.hpp"
#include "lss/rng.hpp"

using namespace lss;

namespace {

// brute-force layer count: infinity-distance to the nearest non-member
// (everything outside the box included); independent of the chamfer sweep
int brute_layers(const Grid& g, int64_t m, int cap) {
  const Index& c = g.lattice_of[m];
  for (int d = 1; d <= cap; ++d) {
    const int lo2 = g.dim == 3 ? -d : 0, hi2 = g.dim == 3 ? d : 0;
    for (int a = -d; a <= d; ++a)
      for (int b = -d; b <= d; ++b)
        for (int e = lo2; e <= hi2; ++e) {
          if (!g.is_member({c[0] + a, c[1] + b, c[2] + e})) return d;
        }
  }
  return cap + 1;
}

}  // namespace

TEST_CASE("gaussian bump hits the stated velocity range") {
  const Grid g = build_grid(2, 96, Shape::rectangle);
  const Medium med = build_medium(g, "gaussian-bump", {}, 100.0, 6);
  CHECK(med.min_c == doctest::Approx(2.0 / 3.0).epsilon(0.015));
  CHECK(std::abs(med.min_c - 2.0 / 3.0) < 0.01);
  CHECK(med.max_c == doctest::Approx(1.0).epsilon(1e-12));
  for (const cplx& q : med.q) CHECK(q.imag() == 0.0);  // Helmholtz media are real
}

TEST_CASE("depth 0 gives q identically zero") {
  const Grid g = build_grid(2, 24, Shape::rectangle);
  MediumParams p;
  p.depth = 0.0;
  for (const char* name : {"gaussian-bump", "square-cavity", "l2ball-cavity", "l1ball-cavity"}) {
    const Medium med = build_medium(g, name, p, 25.0, 4);
    for (const cplx& q : med.q) CHECK(q == cplx(0.0, 0.0));
  }
}

TEST_CASE("laplace-gaussian reproduces max|V| = eta n^2") {
  const Grid g = build_grid(3, 23, Shape::rectangle);
  const Medium med = build_medium(g, "laplace-gaussian", {}, 0.0, 6);
  CHECK(med.kind == EquationKind::laplace);
  CHECK(med.max_abs_v == doctest::Approx(1.1 * 23 * 23).epsilon(1e-6));  // ~5.8e2
  CHECK(med.max_abs_v == doctest::Approx(582.0).epsilon(1e-3));
  for (const cplx& q : med.q) CHECK(q.real() <= 0.0);  // negative potential
}

TEST_CASE("buffer layers carry exactly zero q") {
  ShapeParams sp;
  sp.radius = 0.5;
  const int b = 4;
  for (auto [dim, n, shape] : {std::tuple{2, 24, Shape::rectangle},
                               std::tuple{2, 24, Shape::l2ball},
                               std::tuple{3, 12, Shape::rectangle}}) {
    const Grid g = build_grid(dim, n, shape, sp);
    const Medium med =
        build_medium(g, "gaussian-bump", {}, 2.0 * kPi * n / 6.0, b);
    bool some_nonzero = false;
    for (int64_t m = 0; m < g.num_members; ++m) {
      if (brute_layers(g, m, b) <= b) {
        CHECK(med.q[m] == cplx(0.0, 0.0));
      } else {
        some_nonzero |= std::abs(med.q[m]) > 0;
      }
    }
    CHECK(some_nonzero);
  }
}

TEST_CASE("cavity profile gradient respects the smoothing width") {
  const Grid g = build_grid(2, 64, Shape::rectangle);
  const double omega = 2.0 * kPi * 64 / 6.0;
  MediumParams p;  // smooth_pts = 3
  const Medium med = build_medium(g, "square-cavity", p, omega, 6);
  double max_m = 0, max_grad = 0;
  const double w2 = omega * omega;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double m = med.q[g.member_id[g.lattice_index({i, j, 0})]].real() / w2;
      max_m = std::max(max_m, std::abs(m));
      if (i + 1 < g.n) {
        const double m2 = med.q[g.member_id[g.lattice_index({i + 1, j, 0})]].real() / w2;
        max_grad = std::max(max_grad, std::abs(m2 - m) / g.h);
      }
    }
  CHECK(max_m > 0.5);  // cavity wall present
  // quintic step slope (15/8)/w times d m / d S <= 2.25 gives the 3.5 bound
  CHECK(max_grad <= 3.5 * max_m / (p.smooth_pts * g.h));
}

TEST_CASE("medium validation") {
  const Grid g = build_grid(2, 16, Shape::rectangle);
  CHECK_THROWS_AS(build_medium(g, "no-such-profile", {}, 10.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_medium(g, "gaussian-bump", {}, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_medium(g, "gaussian-bump", {}, 10.0, 1), std::invalid_argument);
  MediumParams deep;
  deep.depth = 0.5;
  CHECK_THROWS_AS(build_medium(g, "gaussian-bump", deep, 10.0, 4), std::invalid_argument);
  const Grid g2 = build_grid(2, 16, Shape::rectangle);
  CHECK_THROWS_AS(build_medium(g2, "laplace-gaussian", {}, 0.0, 4), std::invalid_argument);
}

TEST_CASE("incident plane wave: unit modulus, value at origin side, periodicity") {
  const Grid g = build_grid(2, 32, Shape::rectangle);
  const double omega = 2.0 * kPi * 32 / 8.0;  // wavelength = 8h exactly
  const Field u = incident_plane_wave(g, omega, {0, -1, 0});
  for (const cplx& z : u) CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-13));
  // two points one wavelength apart along the direction agree
  const int64_t a = g.member_id[g.lattice_index({5, 4, 0})];
  const int64_t b = g.member_id[g.lattice_index({5, 12, 0})];
  CHECK(std::abs(u[a] - u[b]) < 1e-12);
  CHECK_THROWS_AS(incident_plane_wave(g, omega, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("delta source scales as 1/h^dim at the nearest point") {
  const Grid g = build_grid(3, 10, Shape::rectangle);
  const Field f = delta_source(g, {0.2, 0.8, 0.5});
  int64_t nonzero = -1;
  for (int64_t i = 0; i < g.num_members; ++i) {
    if (f[i] != cplx(0.0, 0.0)) {
      CHECK(nonzero == -1);
      nonzero = i;
    }
  }
  REQUIRE(nonzero >= 0);
  CHECK(f[nonzero].real() == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("build_rhs: zero medium, linearity, single-point column") {
  const Grid g = build_grid(2, 12, Shape::rectangle);
  const double omega = 2.0 * kPi;
  MediumParams p0;
  p0.depth = 0.0;
  const Medium zero = build_medium(g, "gaussian-bump", p0, omega, 3);
  const KernelCoeffs coeffs = quadrature_coeffs(g, omega, EquationKind::helmholtz);
  const Field u_inc = incident_plane_wave(g, omega, {0, -1, 0});

  const Field g0 = build_rhs(coeffs, g, zero, u_inc);
  for (const cplx& z : g0) CHECK(std::abs(z) == 0.0);

  Medium med = zero;
  const int64_t p = g.member_id[g.lattice_index({6, 6, 0})];
  med.q[p] = cplx(3.5, 0.0);
  const Field g1 = build_rhs(coeffs, g, med, u_inc);
  Field doubled = u_inc;
  for (cplx& z : doubled) z *= 2.0;
  const Field g2 = build_rhs(coeffs, g, med, doubled);
  for (size_t i = 0; i < g1.size(); ++i) {
    CHECK(std::abs(g2[i] - 2.0 * g1[i]) <= 1e-14 * std::abs(g1[i]) + 1e-18);
  }
  // column check against the direct formula g_i = -k_{i-p} q_p u_I(p)
  const Index& pp = g.lattice_of[p];
  for (int64_t i = 0; i < g.num_members; ++i) {
    const Index& ii = g.lattice_of[i];
    const cplx want =
        -coeffs.at({ii[0] - pp[0], ii[1] - pp[1], 0}) * med.q[p] * u_inc[p];
    CHECK(std::abs(g1[i] - want) <= 1e-12 * std::max(1e-6, std::abs(want)));
  }
}
