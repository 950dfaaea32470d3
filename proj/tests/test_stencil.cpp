// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/stencil.hpp"

#include <cmath>

#include "doctest.h"
#include "lss/rng.hpp"

using namespace lss;

namespace {

double phase_aligned_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  REQUIRE(a.size() == b.size());
  cplx corr = 0;
  for (size_t i = 0; i < a.size(); ++i) corr += a[i] * std::conj(b[i]);
  const cplx rot = std::abs(corr) > 0 ? corr / std::abs(corr) : cplx(1, 0);
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] - rot * b[i]);
  return std::sqrt(d);
}

double gram_lambda_min(const std::vector<cplx>& m, int s, int64_t p) {
  std::vector<cplx> gram(static_cast<size_t>(s) * s, cplx(0));
  for (int64_t j = 0; j < p; ++j) {
    const cplx* col = m.data() + static_cast<int64_t>(s) * j;
    for (int b = 0; b < s; ++b)
      for (int a = b; a < s; ++a) gram[a + static_cast<size_t>(b) * s] += col[a] * std::conj(col[b]);
  }
  return hermitian_smallest_eigpair(std::move(gram), s).second;
}

}  // namespace

TEST_CASE("smallest_left_singular_vector on a diagonal example") {
  // M = [[1,0,0],[0,2,0]] col-major 2x3
  const std::vector<cplx> m{1, 0, 0, 2, 0, 0};
  const SmallestSV sv = smallest_left_singular_vector(m.data(), 2, 3);
  CHECK(!sv.degenerate);
  CHECK(sv.sigma_min == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(sv.alpha[0] - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(sv.alpha[1]) < 1e-12);
}

TEST_CASE("smallest_left_singular_vector matches the Gram eigenvalue route") {
  SplitMix64 rng(17);
  std::vector<cplx> m(9 * 200);
  for (cplx& z : m) z = rng.gaussian();
  const SmallestSV sv = smallest_left_singular_vector(m.data(), 9, 200);
  const double lam = gram_lambda_min(m, 9, 200);
  CHECK(sv.sigma_min == doctest::Approx(std::sqrt(lam)).epsilon(1e-12));
  // alpha really annihilates: |alpha M| = sigma_min
  double r = 0;
  for (int j = 0; j < 200; ++j) {
    cplx acc = 0;
    for (int a = 0; a < 9; ++a) acc += sv.alpha[a] * m[a + 9 * j];
    r += std::norm(acc);
  }
  CHECK(std::sqrt(r) == doctest::Approx(sv.sigma_min).epsilon(1e-10));
}

TEST_CASE("smallest_left_singular_vector: zero row and degenerate input") {
  SplitMix64 rng(23);
  std::vector<cplx> m(3 * 8, cplx(0));
  for (int j = 0; j < 8; ++j) {
    m[0 + 3 * j] = rng.gaussian();
    m[2 + 3 * j] = rng.gaussian();
  }
  const SmallestSV sv = smallest_left_singular_vector(m.data(), 3, 8);
  CHECK(sv.sigma_min <= 1e-14);
  CHECK(std::abs(sv.alpha[1] - cplx(1, 0)) < 1e-10);

  const std::vector<cplx> zero(3 * 8, cplx(0));
  CHECK(smallest_left_singular_vector(zero.data(), 3, 8).degenerate);
  CHECK_THROWS_AS(smallest_left_singular_vector(m.data(), 3, 2), std::invalid_argument);
}

TEST_CASE("interior stencil agrees with the explicit-matrix SVD oracle") {
  const Grid g = build_grid(2, 8, Shape::rectangle);
  const KernelCoeffs c = quadrature_coeffs(g, 20.0, EquationKind::helmholtz);
  double sigma_gram = 0;
  const auto alpha = interior_stencil(c, g, &sigma_gram);
  CHECK(alpha.size() == 9);
  double norm = 0;
  for (const cplx& z : alpha) norm += std::norm(z);
  CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));

  int s = 0;
  int64_t p = 0;
  const auto m = assemble_class_matrix(c, g, {0, 0, 0}, 0, &s, &p);
  const SmallestSV sv = smallest_left_singular_vector(m.data(), s, p);
  CHECK(std::abs(sigma_gram - sv.sigma_min) <= 1e-10 * std::max(1.0, sv.sigma_min));
  CHECK(phase_aligned_diff(alpha, sv.alpha) <= 1e-8);
}

TEST_CASE("interior stencil respects the dihedral symmetry of the kernel") {
  const Grid g = build_grid(2, 10, Shape::rectangle);
  const KernelCoeffs c = quadrature_coeffs(g, 8.0, EquationKind::helmholtz);
  const auto alpha = interior_stencil(c, g);
  // offsets in lexicographic order; index of (a,b) is 3(a+1) + (b+1)
  auto at = [&](int a, int b) { return alpha[3 * (a + 1) + (b + 1)]; };
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      CHECK(std::abs(at(a, b) - at(b, a)) < 1e-10);   // transpose
      CHECK(std::abs(at(a, b) - at(-a, b)) < 1e-10);  // reflections
      CHECK(std::abs(at(a, b) - at(a, -b)) < 1e-10);
    }
}

TEST_CASE("rectangular boundary stencils: norms, SVD oracle, reflections") {
  const Grid g = build_grid(2, 8, Shape::rectangle);
  const KernelCoeffs c = quadrature_coeffs(g, 20.0, EquationKind::helmholtz);
  std::map<int, double> sigmas;
  const auto stencils = rect_boundary_stencils(c, g, 2, &sigmas);
  CHECK(stencils.size() == 8);  // 4 edges + 4 corners

  for (const auto& [key, alpha] : stencils) {
    double norm = 0;
    for (const cplx& z : alpha) norm += std::norm(z);
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
  }

  for (auto orient : {std::array<int8_t, 3>{1, 0, 0}, std::array<int8_t, 3>{0, -1, 0},
                      std::array<int8_t, 3>{1, 1, 0}, std::array<int8_t, 3>{-1, 1, 0}}) {
    int s = 0;
    int64_t p = 0;
    const auto m = assemble_class_matrix(c, g, orient, 2, &s, &p);
    const SmallestSV sv = smallest_left_singular_vector(m.data(), s, p);
    const auto& alpha = stencils.at(orient_key(orient));
    CHECK(std::abs(sigmas.at(orient_key(orient)) - sv.sigma_min) <= 1e-10);
    CHECK(phase_aligned_diff(alpha, sv.alpha) <= 1e-8);
  }

  // opposite edges are index reflections of each other (up to phase)
  const auto& right = stencils.at(orient_key({1, 0, 0}));  // offsets a in {-1,0}
  const auto& left = stencils.at(orient_key({-1, 0, 0}));  // offsets a in {0,1}
  std::vector<cplx> reflected(left.size());
  // left offsets (a,b) lexicographic; reflection maps (a,b) -> (-a,-b)
  const auto offs = class_offsets(2, {-1, 0, 0});
  const auto offs_r = class_offsets(2, {1, 0, 0});
  for (size_t i = 0; i < offs.size(); ++i) {
    for (size_t j = 0; j < offs_r.size(); ++j) {
      if (offs_r[j][0] == -offs[i][0] && offs_r[j][1] == -offs[i][1]) {
        reflected[j] = left[i];
      }
    }
  }
  CHECK(phase_aligned_diff(right, reflected) <= 1e-10);
}

TEST_CASE("rect_boundary_stencils rejects oversized buffers") {
  const Grid g = build_grid(2, 8, Shape::rectangle);
  const KernelCoeffs c = quadrature_coeffs(g, 10.0, EquationKind::helmholtz);
  CHECK_THROWS_AS(rect_boundary_stencils(c, g, 4, nullptr), std::invalid_argument);
  CHECK_THROWS_AS(rect_boundary_stencils(c, g, 1, nullptr), std::invalid_argument);
}

TEST_CASE("sketch: zero medium, determinism, column values") {
  const Grid g = build_grid(2, 12, Shape::rectangle);
  const double omega = 2.0 * kPi * 12 / 6.0;
  const KernelCoeffs c = quadrature_coeffs(g, omega, EquationKind::helmholtz);

  MediumParams p0;
  p0.depth = 0.0;
  const Medium zero = build_medium(g, "gaussian-bump", p0, omega, 3);
  const SketchMatrix t0 = build_sketch(c, g, zero, 36, 99);
  for (const cplx& z : t0.t) CHECK(z == cplx(0.0, 0.0));

  const Medium med = build_medium(g, "gaussian-bump", {}, omega, 3);
  const SketchMatrix a = build_sketch(c, g, med, 36, 4242);
  const SketchMatrix b = build_sketch(c, g, med, 36, 4242);
  CHECK(a.t == b.t);  // bitwise

  // regenerate the Gaussian stream and verify one column against the
  // direct-summation oracle
  SplitMix64 rng(4242);
  Field col(g.num_members);
  for (int cidx = 0; cidx < 3; ++cidx) {
    for (int64_t j = 0; j < g.num_members; ++j) col[j] = med.q[j] * rng.gaussian();
    const Field want = apply_K_direct(c, g, col);
    double num = 0, den = 0;
    for (int64_t j = 0; j < g.num_members; ++j) {
      num += std::norm(want[j] - a.t[cidx * g.num_members + j]);
      den += std::norm(want[j]);
    }
    CHECK(std::sqrt(num) <= 1e-12 * std::sqrt(den));
  }

  CHECK_THROWS_AS(build_sketch(c, g, med, 4, 1), std::invalid_argument);
}

TEST_CASE("randomized boundary stencils: identity fallback at q = 0") {
  ShapeParams sp;
  sp.radius = 0.5;
  const Grid g = build_grid(2, 16, Shape::l2ball, sp);
  const Classification cls = classify(g);
  const double omega = 2.0 * kPi * 16 / 6.0;
  const KernelCoeffs c = quadrature_coeffs(g, omega, EquationKind::helmholtz);
  MediumParams p0;
  p0.depth = 0.0;
  const Medium zero = build_medium(g, "gaussian-bump", p0, omega, 3);
  const SketchMatrix sk = build_sketch(c, g, zero, 36, 5);
  StencilSet set;
  randomized_boundary_stencils(sk, g, cls, &set);
  for (int64_t i : cls.boundary) {
    const auto mu = neighborhood(g, i);
    const auto& alpha = set.point_boundary[i];
    REQUIRE(alpha.size() == mu.size());
    for (size_t a = 0; a < mu.size(); ++a) {
      CHECK(alpha[a] == (mu[a] == i ? cplx(1, 0) : cplx(0, 0)));
    }
  }
}

TEST_CASE("randomized per-point cost stays O(1) as the grid grows") {
  ShapeParams sp;
  sp.radius = 0.5;
  auto per_point_seconds = [&](int n) {
    const Grid g = build_grid(2, n, Shape::l2ball, sp);
    const Classification cls = classify(g);
    const double omega = 2.0 * kPi * n / 6.0;
    const KernelCoeffs c = quadrature_coeffs(g, omega, EquationKind::helmholtz);
    const Medium med = build_medium(g, "gaussian-bump", {}, omega, 4);
    const SketchMatrix sk = build_sketch(c, g, med, 36, 7);
    StencilSet set;
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      Timer t;
      randomized_boundary_stencils(sk, g, cls, &set);
      best = std::min(best, t.seconds());
    }
    return best / static_cast<double>(cls.boundary.size());
  };
  const double t16 = per_point_seconds(16);
  const double t64 = per_point_seconds(64);
  CHECK(t64 <= 2.0 * t16 + 2e-6);  // small absolute floor for timer noise
}

TEST_CASE("randomized stencils annihilate nearly as well as deterministic ones") {
  const Grid g = build_grid(2, 16, Shape::rectangle);
  const Classification cls = classify(g);
  const double omega = 2.0 * kPi * 16 / 6.0;
  const KernelCoeffs c = quadrature_coeffs(g, omega, EquationKind::helmholtz);
  const Medium med = build_medium(g, "gaussian-bump", {}, omega, 4);
  std::map<int, double> sigmas;
  const auto rect = rect_boundary_stencils(c, g, med.buffer_b, &sigmas);
  const SketchMatrix sk = build_sketch(c, g, med, 36, 31);
  StencilSet set;
  randomized_boundary_stencils(sk, g, cls, &set);

  // compare on mid-edge and corner points, in the region metric
  for (int64_t i : cls.boundary) {
    const Index& ii = g.lattice_of[i];
    const bool mid_right = ii[0] == g.n - 1 && ii[1] == g.n / 2;
    const bool corner = ii[0] == g.n - 1 && ii[1] == g.n - 1;
    if (!mid_right && !corner) continue;
    const auto orient = cls.orient[i];
    int s = 0;
    int64_t p = 0;
    const auto m = assemble_class_matrix(c, g, orient, med.buffer_b, &s, &p);
    auto region_residual = [&](const std::vector<cplx>& alpha) {
      REQUIRE(static_cast<int>(alpha.size()) == s);
      double r = 0;
      for (int64_t j = 0; j < p; ++j) {
        cplx acc = 0;
        for (int a = 0; a < s; ++a) acc += alpha[a] * m[a + static_cast<int64_t>(s) * j];
        r += std::norm(acc);
      }
      return std::sqrt(r);
    };
    const double det_r = region_residual(rect.at(orient_key(orient)));
    const double rand_r = region_residual(set.point_boundary[i]);
    CHECK(rand_r <= 10.0 * det_r + 1e-16);
  }
}

TEST_CASE("derive_c_row equals alpha times the neighborhood kernel block") {
  const Grid g = build_grid(2, 10, Shape::rectangle);
  const KernelCoeffs c = quadrature_coeffs(g, 11.0, EquationKind::helmholtz);
  const auto alpha = interior_stencil(c, g);
  const auto crow = derive_c_row(c, alpha);
  const auto offs = class_offsets(2, {0, 0, 0});
  double k_frob = 0;
  for (size_t b = 0; b < offs.size(); ++b) {
    cplx want = 0;
    for (size_t a = 0; a < offs.size(); ++a) {
      const cplx kab = c.at({offs[a][0] - offs[b][0], offs[a][1] - offs[b][1], 0});
      want += alpha[a] * kab;
      k_frob += std::norm(kab);
    }
    CHECK(crow[b] == want);  // same entries, same arithmetic
  }
  double cnorm = 0;
  for (const cplx& z : crow) cnorm += std::norm(z);
  CHECK(std::sqrt(cnorm) <= std::sqrt(k_frob) + 1e-15);  // |c| <= |alpha| |K|_F
}

TEST_CASE("stencil sets are bitwise deterministic") {
  ShapeParams sp;
  sp.radius = 0.5;
  const Grid g = build_grid(2, 14, Shape::l2ball, sp);
  const Classification cls = classify(g);
  const double omega = 2.0 * kPi * 14 / 6.0;
  const KernelCoeffs c = quadrature_coeffs(g, omega, EquationKind::helmholtz);
  const Medium med = build_medium(g, "gaussian-bump", {}, omega, 3);
  const StencilSet a = build_stencils(c, g, cls, med, true, 36, 777);
  const StencilSet b = build_stencils(c, g, cls, med, true, 36, 777);
  CHECK(a.interior == b.interior);
  CHECK(a.c_row == b.c_row);
  REQUIRE(a.point_boundary.size() == b.point_boundary.size());
  for (size_t i = 0; i < a.point_boundary.size(); ++i) {
    CHECK(a.point_boundary[i] == b.point_boundary[i]);
  }
}
