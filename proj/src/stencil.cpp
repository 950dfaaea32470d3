// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/stencil.hpp"

#include <cmath>
#include <stdexcept>

#include "lss/rng.hpp"
#include "lss/special_fn.hpp"

namespace lss {

namespace {

// Quadrature weights over the doubly-extended offset range [-n, n]^dim
// (stencil offsets reach one cell beyond the in-grid difference range).
// Entry t = 0 carries the corrected k_0 from the coefficient table.
struct ExtendedTable {
  int dim, n;
  std::vector<cplx> k;

  ExtendedTable(const KernelCoeffs& c) : dim(c.dim), n(c.n) {
    const int w = 2 * n + 1;
    const GreenKind gk{c.dim, c.omega};
    const double hd = std::pow(c.h, c.dim);
    k.assign(pow_int(w, dim), cplx(0));
    const int lo2 = dim == 3 ? -n : 0, hi2 = dim == 3 ? n : 0;
    for (int a = -n; a <= n; ++a)
      for (int b = -n; b <= n; ++b)
        for (int d = lo2; d <= hi2; ++d) {
          int64_t idx = a + n;
          idx = idx * w + (b + n);
          if (dim == 3) idx = idx * w + (d + n);
          if (a == 0 && b == 0 && d == 0) {
            k[idx] = c.k0();
          } else {
            const double r = std::sqrt(double(a) * a + double(b) * b + double(d) * d);
            k[idx] = green(gk, r * c.h) * hd;
          }
        }
  }

  cplx at(int a, int b, int d) const {
    const int w = 2 * n + 1;
    int64_t idx = a + n;
    idx = idx * w + (b + n);
    if (dim == 3) idx = idx * w + (d + n);
    return k[idx];
  }
};

struct AxisRange {
  int lo, hi;
};

// Far region of a stencil class in the translated frame: the domain side of
// each bounded axis beyond the zero buffer, everything on free axes.
std::array<AxisRange, 3> class_region(int dim, int n, int b,
                                      const std::array<int8_t, 3>& orient) {
  std::array<AxisRange, 3> r{};
  for (int d = 0; d < 3; ++d) {
    if (d >= dim) {
      r[d] = {0, 0};
    } else if (orient[d] > 0) {
      r[d] = {-n + 1, -b - 1};
    } else if (orient[d] < 0) {
      r[d] = {b + 1, n - 1};
    } else {
      r[d] = {-n + 1, n - 1};
    }
  }
  return r;
}

bool is_interior_class(const std::array<int8_t, 3>& orient) {
  return orient[0] == 0 && orient[1] == 0 && orient[2] == 0;
}

// Gram matrix G = M M^H accumulated by direct summation over the region,
// s x s col-major lower triangle.
std::vector<cplx> accumulate_gram(const ExtendedTable& ktab, const std::vector<Index>& offsets,
                                  const std::array<AxisRange, 3>& region, bool skip_mu) {
  const int s = static_cast<int>(offsets.size());
  std::vector<cplx> gram(static_cast<size_t>(s) * s, cplx(0));
  std::vector<cplx> row(s);
  for (int ja = region[0].lo; ja <= region[0].hi; ++ja)
    for (int jb = region[1].lo; jb <= region[1].hi; ++jb)
      for (int jd = region[2].lo; jd <= region[2].hi; ++jd) {
        if (skip_mu && std::abs(ja) <= 1 && std::abs(jb) <= 1 && std::abs(jd) <= 1) continue;
        for (int a = 0; a < s; ++a) {
          row[a] = ktab.at(offsets[a][0] - ja, offsets[a][1] - jb, offsets[a][2] - jd);
        }
        for (int bcol = 0; bcol < s; ++bcol) {
          const cplx cb = std::conj(row[bcol]);
          cplx* g = gram.data() + static_cast<size_t>(bcol) * s;
          for (int arow = bcol; arow < s; ++arow) g[arow] += row[arow] * cb;
        }
      }
  return gram;
}

std::vector<cplx> stencil_from_gram(std::vector<cplx> gram, int s, double* sigma_out) {
  auto [v, lambda] = hermitian_smallest_eigpair(std::move(gram), s);
  for (cplx& z : v) z = std::conj(z);
  fix_phase(v);
  if (sigma_out) *sigma_out = std::sqrt(std::max(lambda, 0.0));
  return v;
}

}  // namespace

std::vector<Index> class_offsets(int dim, const std::array<int8_t, 3>& orient) {
  std::vector<Index> offsets;
  auto range = [&](int d) -> AxisRange {
    if (d >= dim) return {0, 0};
    if (orient[d] > 0) return {-1, 0};  // high side: no neighbor beyond the face
    if (orient[d] < 0) return {0, 1};
    return {-1, 1};
  };
  const AxisRange r0 = range(0), r1 = range(1), r2 = range(2);
  for (int a = r0.lo; a <= r0.hi; ++a)
    for (int b = r1.lo; b <= r1.hi; ++b)
      for (int d = r2.lo; d <= r2.hi; ++d) offsets.push_back({a, b, d});
  return offsets;
}

std::vector<cplx> interior_stencil(const KernelCoeffs& coeffs, const Grid& grid,
                                   double* sigma_out) {
  const ExtendedTable ktab(coeffs);
  const std::array<int8_t, 3> o{0, 0, 0};
  const auto offsets = class_offsets(grid.dim, o);
  auto gram = accumulate_gram(ktab, offsets, class_region(grid.dim, grid.n, 0, o), true);
  return stencil_from_gram(std::move(gram), static_cast<int>(offsets.size()), sigma_out);
}

std::map<int, std::vector<cplx>> rect_boundary_stencils(const KernelCoeffs& coeffs,
                                                        const Grid& grid, int b,
                                                        std::map<int, double>* sigmas) {
  if (grid.shape != Shape::rectangle) {
    throw std::invalid_argument("rect_boundary_stencils: grid is not rectangular");
  }
  if (b < 2 || 2 * b >= grid.n) {
    throw std::invalid_argument("rect_boundary_stencils: need 2 <= b < n/2");
  }
  const ExtendedTable ktab(coeffs);
  std::map<int, std::vector<cplx>> out;

  const int lo2 = grid.dim == 3 ? -1 : 0, hi2 = grid.dim == 3 ? 1 : 0;
  for (int oa = -1; oa <= 1; ++oa)
    for (int ob = -1; ob <= 1; ++ob)
      for (int od = lo2; od <= hi2; ++od) {
        const std::array<int8_t, 3> o{static_cast<int8_t>(oa), static_cast<int8_t>(ob),
                                      static_cast<int8_t>(od)};
        if (is_interior_class(o)) continue;
        const auto offsets = class_offsets(grid.dim, o);
        auto gram =
            accumulate_gram(ktab, offsets, class_region(grid.dim, grid.n, b, o), false);
        double sigma = 0;
        out[orient_key(o)] =
            stencil_from_gram(std::move(gram), static_cast<int>(offsets.size()), &sigma);
        if (sigmas) (*sigmas)[orient_key(o)] = sigma;
      }
  return out;
}

std::vector<cplx> assemble_class_matrix(const KernelCoeffs& coeffs, const Grid& grid,
                                        const std::array<int8_t, 3>& orient, int b,
                                        int* s_out, int64_t* p_out) {
  const ExtendedTable ktab(coeffs);
  const auto offsets = class_offsets(grid.dim, orient);
  const auto region = class_region(grid.dim, grid.n, b, orient);
  const bool skip_mu = is_interior_class(orient);
  const int s = static_cast<int>(offsets.size());

  std::vector<cplx> m;
  for (int ja = region[0].lo; ja <= region[0].hi; ++ja)
    for (int jb = region[1].lo; jb <= region[1].hi; ++jb)
      for (int jd = region[2].lo; jd <= region[2].hi; ++jd) {
        if (skip_mu && std::abs(ja) <= 1 && std::abs(jb) <= 1 && std::abs(jd) <= 1) continue;
        for (int a = 0; a < s; ++a) {
          m.push_back(ktab.at(offsets[a][0] - ja, offsets[a][1] - jb, offsets[a][2] - jd));
        }
      }
  *s_out = s;
  *p_out = static_cast<int64_t>(m.size()) / s;
  return m;  // col-major s x p: one region point per column
}

SketchMatrix build_sketch(const KernelCoeffs& coeffs, const Grid& grid, const Medium& medium,
                          int r, uint64_t seed) {
  if (r < pow_int(3, grid.dim)) {
    throw std::invalid_argument("build_sketch: r must be at least 3^dim");
  }
  SketchMatrix sk;
  sk.n = grid.num_members;
  sk.r = r;
  sk.seed = seed;
  sk.t.resize(static_cast<int64_t>(sk.n) * r);

  SplitMix64 rng(seed);
  Field col(sk.n);
  for (int c = 0; c < r; ++c) {
    for (int64_t j = 0; j < sk.n; ++j) col[j] = medium.q[j] * rng.gaussian();
    Field tc = apply_K(coeffs, grid, col);
    std::copy(tc.begin(), tc.end(), sk.t.begin() + static_cast<int64_t>(c) * sk.n);
  }
  return sk;
}

void randomized_boundary_stencils(const SketchMatrix& sketch, const Grid& grid,
                                  const Classification& cls, StencilSet* out) {
  out->randomized = true;
  out->point_boundary.assign(grid.num_members, {});
  out->point_sigma.assign(grid.num_members, -1.0);

  double t_frob = 0;
  for (const cplx& z : sketch.t) t_frob += std::norm(z);
  t_frob = std::sqrt(t_frob);

  std::vector<cplx> block;
  for (int64_t i : cls.boundary) {
    const auto mu = neighborhood(grid, i);
    const int s = static_cast<int>(mu.size());
    block.assign(static_cast<size_t>(s) * sketch.r, cplx(0));
    double local = 0;
    for (int c = 0; c < sketch.r; ++c) {
      const cplx* tc = sketch.t.data() + static_cast<int64_t>(c) * sketch.n;
      for (int a = 0; a < s; ++a) {
        const cplx z = tc[mu[a]];
        block[static_cast<size_t>(c) * s + a] = z;
        local += std::norm(z);
      }
    }
    local = std::sqrt(local);

    std::vector<cplx> alpha;
    double sigma = 0;
    if (local < 1e-14 * t_frob || sketch.r < s) {
      alpha.assign(s, cplx(0));
      for (int a = 0; a < s; ++a) {
        if (mu[a] == i) alpha[a] = cplx(1.0, 0.0);
      }
    } else {
      SmallestSV sv = smallest_left_singular_vector(block.data(), s, sketch.r);
      if (sv.degenerate) {
        alpha.assign(s, cplx(0));
        for (int a = 0; a < s; ++a) {
          if (mu[a] == i) alpha[a] = cplx(1.0, 0.0);
        }
      } else {
        alpha = std::move(sv.alpha);
        sigma = t_frob > 0 ? sv.sigma_min / t_frob : 0.0;
      }
    }
    out->point_boundary[i] = std::move(alpha);
    out->point_sigma[i] = sigma;
  }
}

std::vector<cplx> derive_c_row(const KernelCoeffs& coeffs, const std::vector<cplx>& interior) {
  const auto offsets = class_offsets(coeffs.dim, {0, 0, 0});
  const int s = static_cast<int>(offsets.size());
  if (static_cast<int>(interior.size()) != s) {
    throw std::invalid_argument("derive_c_row: stencil length mismatch");
  }
  std::vector<cplx> c(s, cplx(0));
  for (int bcol = 0; bcol < s; ++bcol) {
    cplx acc = 0;
    for (int a = 0; a < s; ++a) {
      acc += interior[a] * coeffs.at({offsets[a][0] - offsets[bcol][0],
                                      offsets[a][1] - offsets[bcol][1],
                                      offsets[a][2] - offsets[bcol][2]});
    }
    c[bcol] = acc;
  }
  return c;
}

StencilSet build_stencils(const KernelCoeffs& coeffs, const Grid& grid,
                          const Classification& cls, const Medium& medium, bool use_randomized,
                          int sketch_r, uint64_t seed) {
  StencilSet set;
  set.interior = interior_stencil(coeffs, grid, &set.interior_sigma);
  set.c_row = derive_c_row(coeffs, set.interior);
  if (use_randomized) {
    const SketchMatrix sk = build_sketch(coeffs, grid, medium, sketch_r, seed);
    randomized_boundary_stencils(sk, grid, cls, &set);
  } else {
    set.rect_boundary = rect_boundary_stencils(coeffs, grid, medium.buffer_b, &set.rect_sigma);
  }
  return set;
}

}  // namespace lss
