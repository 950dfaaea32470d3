// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_SPARSE_ND_HPP
#define LSS_SPARSE_ND_HPP

#include "lss/grid.hpp"
#include "lss/media.hpp"
#include "lss/stencil.hpp"

namespace lss {

/// Compressed sparse row complex matrix; row i of the assembled systems has
/// support exactly in mu(i), so nnz <= 3^dim per row.
struct SparseSystem {
  int64_t n = 0;
  std::vector<int64_t> rowptr, colind;
  std::vector<cplx> vals;
};

/// Builds the preconditioner matrix P (interior rows A + C q, boundary rows
/// B) and the right-hand-side applier [A; B] (interior rows A, boundary B).
std::pair<SparseSystem, SparseSystem> assemble(const StencilSet& stencils,
                                               const Medium& medium, const Grid& grid,
                                               const Classification& cls);

Field apply_AB(const SparseSystem& ab, const Field& v);

/// Geometric nested dissection: recursive bisection by width-1 axis-aligned
/// separators (longest axis first), leaves of at most 64 member points.
/// Tree nodes own disjoint point sets; perm lists points in elimination
/// (postorder) order.
struct NdNode {
  int parent = -1;
  std::vector<int64_t> points;  // member ids, lattice order
  int64_t post_begin = 0, post_end = 0;  // postorder interval of the subtree
};

struct NdOrdering {
  std::vector<NdNode> nodes;      // postorder: children precede parents
  std::vector<int64_t> perm;      // elimination order -> member id
  std::vector<int64_t> iperm;     // member id -> elimination position
  std::vector<int> node_of;       // member id -> owning node
};

NdOrdering nd_order(const Grid& grid, const Classification& cls);

/// Multifrontal LU of P in the nested-dissection order. Pivoting is partial
/// within each front's pivot block; pivots with modulus below
/// 1e-14 * |front|_inf are perturbed up to that threshold and logged.
struct Front {
  std::vector<int64_t> pivots;  // global member ids, elimination order
  std::vector<int64_t> update;  // ancestor ids coupled to this subtree
  std::vector<cplx> f11;        // |P| x |P| packed LU (col-major)
  std::vector<cplx> f12;        // |P| x |U| (rows pivoted, L11^-1 applied)
  std::vector<cplx> f21;        // |U| x |P| (A21 U11^-1)
  std::vector<int> ipiv;
};

struct PivotEvent {
  int front = 0;
  int64_t pivot = 0;      // local pivot index within the front
  double magnitude = 0;   // |pivot| before the bump
};

struct Factorization {
  std::vector<Front> fronts;  // aligned with NdOrdering::nodes
  const NdOrdering* order = nullptr;
  int64_t n = 0;
  int64_t factor_nnz = 0;
  std::vector<PivotEvent> perturbation_log;  // empty on healthy systems
  int pivot_perturbations() const { return static_cast<int>(perturbation_log.size()); }
};

Factorization factorize(const SparseSystem& p, const NdOrdering& order);

/// x with P x = y up to factorization accuracy; deterministic.
Field solve(const Factorization& fact, const Field& y);

/// y = P x recomposed from the stored LU blocks (structure validation).
Field apply_from_factors(const Factorization& fact, const Field& x);

}  // namespace lss

#endif  // LSS_SPARSE_ND_HPP
