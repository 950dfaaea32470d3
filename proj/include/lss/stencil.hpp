// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_STENCIL_HPP
#define LSS_STENCIL_HPP

#include <map>

#include "lss/dense.hpp"
#include "lss/grid.hpp"
#include "lss/kernel_op.hpp"

namespace lss {

/// Annihilating stencils: the shared interior row of A, the per-class
/// (rectangular) or per-point (general/randomized) boundary rows of B, and
/// the derived interior row of C = A K restricted to the neighborhood.
/// All stencils have unit Euclidean norm and deterministic phase.
struct StencilSet {
  std::vector<cplx> interior;  // length 3^dim, lexicographic offsets
  double interior_sigma = 0;

  std::map<int, std::vector<cplx>> rect_boundary;  // orient_key -> stencil
  std::map<int, double> rect_sigma;

  bool randomized = false;
  std::vector<std::vector<cplx>> point_boundary;  // per member (boundary only)
  std::vector<double> point_sigma;                // per member, -1 if unused

  std::vector<cplx> c_row;  // C(i, mu(i)), shared by translation invariance
};

struct SketchMatrix {
  int64_t n = 0;  // rows (member points)
  int r = 0;      // columns
  uint64_t seed = 0;
  std::vector<cplx> t;  // col-major N x r: T = K (q R)
};

/// Interior stencil: minimizer of |alpha . K(mu(0), I_n)| over unit vectors,
/// accumulated through the s x s Gram matrix (s = 3^dim) and solved as a
/// Hermitian eigenproblem. sigma_out receives the attained residual.
std::vector<cplx> interior_stencil(const KernelCoeffs& coeffs, const Grid& grid,
                                   double* sigma_out = nullptr);

/// Deterministic boundary stencils for rectangular grids, one per
/// face/edge/corner orientation, each over its own translated far region
/// (buffer width b excluded on the bounded sides). Keys are orient_key.
std::map<int, std::vector<cplx>> rect_boundary_stencils(const KernelCoeffs& coeffs,
                                                        const Grid& grid, int b,
                                                        std::map<int, double>* sigmas = nullptr);

/// T = K (q R) with R an N x r matrix of seeded standard complex Gaussians,
/// generated column-by-column; each column is one FFT application.
SketchMatrix build_sketch(const KernelCoeffs& coeffs, const Grid& grid, const Medium& medium,
                          int r, uint64_t seed);

/// Per-boundary-point stencils from the sketch: the smallest left singular
/// vector of T(mu(i), :). A numerically zero block falls back to the
/// identity stencil (1 at i itself).
void randomized_boundary_stencils(const SketchMatrix& sketch, const Grid& grid,
                                  const Classification& cls, StencilSet* out);

/// C(i, mu(i)) = A(i, mu(i)) K(mu(i), mu(i)).
std::vector<cplx> derive_c_row(const KernelCoeffs& coeffs, const std::vector<cplx>& interior);

/// Explicit assembly of the s x |region| matrix K(mu_class(0), region) for a
/// stencil class; test oracle for the Gram route and input to
/// smallest_left_singular_vector. orient all-zero selects the interior class.
std::vector<cplx> assemble_class_matrix(const KernelCoeffs& coeffs, const Grid& grid,
                                        const std::array<int8_t, 3>& orient, int b,
                                        int* s_out, int64_t* p_out);

/// Neighborhood offsets of a stencil class, lexicographic. High sides
/// (orient +1) restrict to {-1,0}, low sides to {0,1}, free axes {-1,0,1}.
std::vector<Index> class_offsets(int dim, const std::array<int8_t, 3>& orient);

/// Convenience: everything run_solve needs, choosing deterministic class
/// stencils on rectangles and sketch-based stencils otherwise.
StencilSet build_stencils(const KernelCoeffs& coeffs, const Grid& grid,
                          const Classification& cls, const Medium& medium, bool use_randomized,
                          int sketch_r, uint64_t seed);

}  // namespace lss

#endif  // LSS_STENCIL_HPP
