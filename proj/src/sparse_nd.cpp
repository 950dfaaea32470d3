// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/sparse_nd.hpp"

#define LAPACK_COMPLEX_CPP
#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lss {

namespace {
lapack_complex_double* lp(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }
const cplx kOne(1.0, 0.0), kMinusOne(-1.0, 0.0), kZero(0.0, 0.0);
}  // namespace

std::pair<SparseSystem, SparseSystem> assemble(const StencilSet& stencils,
                                               const Medium& medium, const Grid& grid,
                                               const Classification& cls) {
  const int64_t n = grid.num_members;
  if (static_cast<int64_t>(medium.q.size()) != n) {
    throw std::invalid_argument("assemble: medium built on a different grid");
  }
  SparseSystem p, ab;
  p.n = ab.n = n;
  p.rowptr.assign(n + 1, 0);
  const int s_full = static_cast<int>(pow_int(3, grid.dim));

  std::vector<std::vector<int64_t>> mus(n);
  for (int64_t i = 0; i < n; ++i) {
    mus[i] = neighborhood(grid, i);
    p.rowptr[i + 1] = p.rowptr[i] + static_cast<int64_t>(mus[i].size());
  }
  ab.rowptr = p.rowptr;
  const int64_t nnz = p.rowptr[n];
  p.colind.resize(nnz);
  p.vals.resize(nnz);
  ab.colind.resize(nnz);
  ab.vals.resize(nnz);

  for (int64_t i = 0; i < n; ++i) {
    const auto& mu = mus[i];
    const int64_t base = p.rowptr[i];
    const cplx* row_b = nullptr;
    if (cls.is_interior[i]) {
      if (static_cast<int>(mu.size()) != s_full || stencils.interior.empty()) {
        throw std::invalid_argument("assemble: interior stencil missing or wrong size");
      }
      for (size_t a = 0; a < mu.size(); ++a) {
        p.colind[base + a] = ab.colind[base + a] = mu[a];
        const cplx aval = stencils.interior[a];
        p.vals[base + a] = aval + stencils.c_row[a] * medium.q[mu[a]];
        ab.vals[base + a] = aval;
      }
      continue;
    }
    if (stencils.randomized) {
      if (stencils.point_boundary[i].size() != mu.size()) {
        throw std::invalid_argument("assemble: missing per-point boundary stencil");
      }
      row_b = stencils.point_boundary[i].data();
    } else {
      const auto it = stencils.rect_boundary.find(orient_key(cls.orient[i]));
      if (it == stencils.rect_boundary.end() || it->second.size() != mu.size()) {
        throw std::invalid_argument("assemble: missing boundary stencil class");
      }
      row_b = it->second.data();
    }
    for (size_t a = 0; a < mu.size(); ++a) {
      p.colind[base + a] = ab.colind[base + a] = mu[a];
      p.vals[base + a] = ab.vals[base + a] = row_b[a];
    }
  }
  return {std::move(p), std::move(ab)};
}

Field apply_AB(const SparseSystem& ab, const Field& v) {
  if (static_cast<int64_t>(v.size()) != ab.n) {
    throw std::invalid_argument("apply_AB: size mismatch");
  }
  Field out(ab.n);
  for (int64_t i = 0; i < ab.n; ++i) {
    cplx acc = 0;
    for (int64_t k = ab.rowptr[i]; k < ab.rowptr[i + 1]; ++k) {
      acc += ab.vals[k] * v[ab.colind[k]];
    }
    out[i] = acc;
  }
  return out;
}

namespace {

constexpr int kLeafSize = 64;

struct TreeBuilder {
  const Grid& grid;
  NdOrdering out;

  // Splits the member points of a lattice box by the middle plane of its
  // longest axis; recursion order fixes the postorder numbering.
  int build(std::vector<int64_t> pts, Index lo, Index hi) {
    const int64_t first_node = static_cast<int64_t>(out.nodes.size());
    NdNode node;
    if (static_cast<int64_t>(pts.size()) <= kLeafSize) {
      node.points = std::move(pts);
    } else {
      int axis = 0, len = 0;
      for (int d = 0; d < grid.dim; ++d) {
        const int l = hi[d] - lo[d] + 1;
        if (l > len) {
          len = l;
          axis = d;
        }
      }
      const int mid = (lo[axis] + hi[axis]) / 2;
      std::vector<int64_t> left, right;
      for (int64_t m : pts) {
        const int c = grid.lattice_of[m][axis];
        if (c < mid) left.push_back(m);
        else if (c > mid) right.push_back(m);
        else node.points.push_back(m);
      }
      pts.clear();
      pts.shrink_to_fit();
      std::vector<int> kids;
      if (!left.empty()) {
        Index h2 = hi;
        h2[axis] = mid - 1;
        kids.push_back(build(std::move(left), lo, h2));
      }
      if (!right.empty()) {
        Index l2 = lo;
        l2[axis] = mid + 1;
        kids.push_back(build(std::move(right), l2, hi));
      }
      const int me = static_cast<int>(out.nodes.size());
      for (int k : kids) out.nodes[k].parent = me;
    }
    node.post_begin = first_node;
    node.post_end = static_cast<int64_t>(out.nodes.size());
    out.nodes.push_back(std::move(node));
    return static_cast<int>(out.nodes.size()) - 1;
  }
};

}  // namespace

NdOrdering nd_order(const Grid& grid, const Classification& cls) {
  if (static_cast<int64_t>(cls.is_interior.size()) != grid.num_members) {
    throw std::invalid_argument("nd_order: classification size mismatch");
  }
  TreeBuilder tb{grid, {}};
  std::vector<int64_t> all(grid.num_members);
  for (int64_t i = 0; i < grid.num_members; ++i) all[i] = i;
  tb.build(std::move(all), {0, 0, 0}, {grid.n - 1, grid.n - 1, grid.n - 1});

  NdOrdering order = std::move(tb.out);
  order.perm.reserve(grid.num_members);
  order.node_of.assign(grid.num_members, -1);
  for (size_t v = 0; v < order.nodes.size(); ++v) {
    for (int64_t m : order.nodes[v].points) {
      order.node_of[m] = static_cast<int>(v);
      order.perm.push_back(m);
    }
  }
  order.iperm.assign(grid.num_members, -1);
  for (int64_t k = 0; k < static_cast<int64_t>(order.perm.size()); ++k) {
    order.iperm[order.perm[k]] = k;
  }
  return order;
}

namespace {

// true when candidate's owner node strictly contains v in its subtree
inline bool owner_is_proper_ancestor(const NdOrdering& order, int owner, int v) {
  return owner > v && order.nodes[owner].post_begin <= v;
}

}  // namespace

Factorization factorize(const SparseSystem& p, const NdOrdering& order) {
  Factorization fact;
  fact.order = &order;
  fact.n = p.n;
  const int nnodes = static_cast<int>(order.nodes.size());
  fact.fronts.resize(nnodes);

  std::vector<std::vector<cplx>> pending(nnodes);          // child Schur updates
  std::vector<std::vector<int>> children(nnodes);
  for (int v = 0; v < nnodes; ++v) {
    const int par = order.nodes[v].parent;
    if (par >= 0) children[par].push_back(v);
  }

  std::vector<int64_t> loc(p.n, -1);

  for (int v = 0; v < nnodes; ++v) {
    Front& fr = fact.fronts[v];
    fr.pivots = order.nodes[v].points;
    const int64_t np = static_cast<int64_t>(fr.pivots.size());

    // update set: sparse couplings of the pivots plus child carry-overs,
    // filtered to strict ancestors
    std::vector<int64_t> cand;
    for (int64_t i : fr.pivots) {
      for (int64_t k = p.rowptr[i]; k < p.rowptr[i + 1]; ++k) cand.push_back(p.colind[k]);
    }
    for (int c : children[v]) {
      cand.insert(cand.end(), fact.fronts[c].update.begin(), fact.fronts[c].update.end());
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    fr.update.clear();
    for (int64_t j : cand) {
      if (owner_is_proper_ancestor(order, order.node_of[j], v)) fr.update.push_back(j);
    }
    std::sort(fr.update.begin(), fr.update.end(),
              [&](int64_t a, int64_t b) { return order.iperm[a] < order.iperm[b]; });
    const int64_t nu = static_cast<int64_t>(fr.update.size());
    const int64_t f = np + nu;
    if (f == 0) continue;

    for (int64_t a = 0; a < np; ++a) loc[fr.pivots[a]] = a;
    for (int64_t a = 0; a < nu; ++a) loc[fr.update[a]] = np + a;

    std::vector<cplx> front(f * f, kZero);
    // original entries whose deeper endpoint is eliminated here
    for (int64_t a = 0; a < np; ++a) {
      const int64_t i = fr.pivots[a];
      for (int64_t k = p.rowptr[i]; k < p.rowptr[i + 1]; ++k) {
        const int64_t lj = loc[p.colind[k]];
        if (lj >= 0) front[a + lj * f] += p.vals[k];
      }
    }
    for (int64_t a = 0; a < nu; ++a) {
      const int64_t j = fr.update[a];
      for (int64_t k = p.rowptr[j]; k < p.rowptr[j + 1]; ++k) {
        const int64_t li = loc[p.colind[k]];
        if (li >= 0 && li < np) front[(np + a) + li * f] += p.vals[k];
      }
    }
    // extend-add of child Schur complements
    for (int c : children[v]) {
      const auto& cu = fact.fronts[c].update;
      const int64_t m = static_cast<int64_t>(cu.size());
      const std::vector<cplx>& s = pending[c];
      for (int64_t bcol = 0; bcol < m; ++bcol) {
        const int64_t lb = loc[cu[bcol]];
        for (int64_t arow = 0; arow < m; ++arow) {
          front[loc[cu[arow]] + lb * f] += s[arow + bcol * m];
        }
      }
      pending[c].clear();
      pending[c].shrink_to_fit();
    }

    double front_max = 0;
    for (const cplx& z : front) front_max = std::max(front_max, std::abs(z));

    if (np > 0) {
      fr.ipiv.resize(np);
      const int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, np, np, lp(front.data()), f,
                                      fr.ipiv.data());
      if (info < 0) throw std::runtime_error("factorize: bad argument to zgetrf");
      if (info > 0) throw std::runtime_error("factorize: structurally singular front");
      const double thresh = front_max > 0 ? 1e-14 * front_max : 1e-300;
      for (int64_t k = 0; k < np; ++k) {
        cplx& d = front[k + k * f];
        const double a = std::abs(d);
        if (a < thresh) {
          d = a > 0 ? d * (thresh / a) : cplx(thresh, 0.0);
          fact.perturbation_log.push_back({v, k, a});
        }
      }
      if (nu > 0) {
        LAPACKE_zlaswp(LAPACK_COL_MAJOR, nu, lp(front.data() + np * f), f, 1, np,
                       fr.ipiv.data(), 1);
        cblas_ztrsm(CblasColMajor, CblasLeft, CblasLower, CblasNoTrans, CblasUnit, np, nu,
                    &kOne, front.data(), f, front.data() + np * f, f);
        cblas_ztrsm(CblasColMajor, CblasRight, CblasUpper, CblasNoTrans, CblasNonUnit, nu, np,
                    &kOne, front.data(), f, front.data() + np, f);
        cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, nu, nu, np, &kMinusOne,
                    front.data() + np, f, front.data() + np * f, f, &kOne,
                    front.data() + np + np * f, f);
      }
    }

    // pack the factor blocks tightly; the trailing block moves to the parent
    fr.f11.resize(np * np);
    for (int64_t c = 0; c < np; ++c) {
      std::copy_n(front.data() + c * f, np, fr.f11.data() + c * np);
    }
    fr.f12.resize(np * nu);
    for (int64_t c = 0; c < nu; ++c) {
      std::copy_n(front.data() + (np + c) * f, np, fr.f12.data() + c * np);
    }
    fr.f21.resize(nu * np);
    for (int64_t c = 0; c < np; ++c) {
      std::copy_n(front.data() + np + c * f, nu, fr.f21.data() + c * nu);
    }
    if (order.nodes[v].parent >= 0 && nu > 0) {
      pending[v].resize(nu * nu);
      for (int64_t c = 0; c < nu; ++c) {
        std::copy_n(front.data() + np + (np + c) * f, nu, pending[v].data() + c * nu);
      }
    }
    fact.factor_nnz += np * np + 2 * np * nu;

    for (int64_t a = 0; a < np; ++a) loc[fr.pivots[a]] = -1;
    for (int64_t a = 0; a < nu; ++a) loc[fr.update[a]] = -1;
  }
  return fact;
}

Field solve(const Factorization& fact, const Field& y) {
  if (static_cast<int64_t>(y.size()) != fact.n) {
    throw std::invalid_argument("solve: size mismatch");
  }
  Field w = y;
  std::vector<cplx> xp, xu;

  const int nnodes = static_cast<int>(fact.fronts.size());
  for (int v = 0; v < nnodes; ++v) {  // forward: L z = y in postorder
    const Front& fr = fact.fronts[v];
    const int64_t np = static_cast<int64_t>(fr.pivots.size());
    const int64_t nu = static_cast<int64_t>(fr.update.size());
    if (np == 0) continue;
    xp.resize(np);
    for (int64_t a = 0; a < np; ++a) xp[a] = w[fr.pivots[a]];
    for (int64_t k = 0; k < np; ++k) std::swap(xp[k], xp[fr.ipiv[k] - 1]);
    cblas_ztrsv(CblasColMajor, CblasLower, CblasNoTrans, CblasUnit, np, fr.f11.data(), np,
                xp.data(), 1);
    for (int64_t a = 0; a < np; ++a) w[fr.pivots[a]] = xp[a];
    if (nu > 0) {
      xu.assign(nu, kZero);
      cblas_zgemv(CblasColMajor, CblasNoTrans, nu, np, &kOne, fr.f21.data(), nu, xp.data(), 1,
                  &kZero, xu.data(), 1);
      for (int64_t a = 0; a < nu; ++a) w[fr.update[a]] -= xu[a];
    }
  }
  for (int v = nnodes - 1; v >= 0; --v) {  // backward: U x = z
    const Front& fr = fact.fronts[v];
    const int64_t np = static_cast<int64_t>(fr.pivots.size());
    const int64_t nu = static_cast<int64_t>(fr.update.size());
    if (np == 0) continue;
    xp.resize(np);
    for (int64_t a = 0; a < np; ++a) xp[a] = w[fr.pivots[a]];
    if (nu > 0) {
      xu.resize(nu);
      for (int64_t a = 0; a < nu; ++a) xu[a] = w[fr.update[a]];
      cblas_zgemv(CblasColMajor, CblasNoTrans, np, nu, &kMinusOne, fr.f12.data(), np,
                  xu.data(), 1, &kOne, xp.data(), 1);
    }
    cblas_ztrsv(CblasColMajor, CblasUpper, CblasNoTrans, CblasNonUnit, np, fr.f11.data(), np,
                xp.data(), 1);
    for (int64_t a = 0; a < np; ++a) w[fr.pivots[a]] = xp[a];
  }
  return w;
}

Field apply_from_factors(const Factorization& fact, const Field& x) {
  if (static_cast<int64_t>(x.size()) != fact.n) {
    throw std::invalid_argument("apply_from_factors: size mismatch");
  }
  Field z(fact.n, kZero), y(fact.n, kZero);
  std::vector<cplx> t, xu;
  for (const Front& fr : fact.fronts) {  // z = U x
    const int64_t np = static_cast<int64_t>(fr.pivots.size());
    const int64_t nu = static_cast<int64_t>(fr.update.size());
    if (np == 0) continue;
    t.resize(np);
    for (int64_t a = 0; a < np; ++a) t[a] = x[fr.pivots[a]];
    cblas_ztrmv(CblasColMajor, CblasUpper, CblasNoTrans, CblasNonUnit, np, fr.f11.data(), np,
                t.data(), 1);
    if (nu > 0) {
      xu.resize(nu);
      for (int64_t a = 0; a < nu; ++a) xu[a] = x[fr.update[a]];
      cblas_zgemv(CblasColMajor, CblasNoTrans, np, nu, &kOne, fr.f12.data(), np, xu.data(), 1,
                  &kOne, t.data(), 1);
    }
    for (int64_t a = 0; a < np; ++a) z[fr.pivots[a]] = t[a];
  }
  for (const Front& fr : fact.fronts) {  // y += L z
    const int64_t np = static_cast<int64_t>(fr.pivots.size());
    const int64_t nu = static_cast<int64_t>(fr.update.size());
    if (np == 0) continue;
    t.resize(np);
    for (int64_t a = 0; a < np; ++a) t[a] = z[fr.pivots[a]];
    if (nu > 0) {
      xu.assign(nu, kZero);
      cblas_zgemv(CblasColMajor, CblasNoTrans, nu, np, &kOne, fr.f21.data(), nu, t.data(), 1,
                  &kZero, xu.data(), 1);
      for (int64_t a = 0; a < nu; ++a) y[fr.update[a]] += xu[a];
    }
    cblas_ztrmv(CblasColMajor, CblasLower, CblasNoTrans, CblasUnit, np, fr.f11.data(), np,
                t.data(), 1);
    for (int64_t k = np - 1; k >= 0; --k) std::swap(t[k], t[fr.ipiv[k] - 1]);
    for (int64_t a = 0; a < np; ++a) y[fr.pivots[a]] += t[a];
  }
  return y;
}

}  // namespace lss
