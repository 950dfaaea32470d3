// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_DRIVER_HPP
#define LSS_DRIVER_HPP

#include <map>
#include <string>

#include "lss/config.hpp"
#include "lss/krylov.hpp"

namespace lss {

struct RunConfig {
  EquationKind kind = EquationKind::helmholtz;
  int dim = 2;
  double omega = 100.0;
  double ppw = 6.0;   // points per homogeneous wavelength
  int explicit_n = 0; // 0 = derive from ppw (Helmholtz)

  Shape shape = Shape::rectangle;
  ShapeParams shape_params;

  std::string medium_name = "gaussian-bump";
  MediumParams medium_params;
  int buffer_b = 6;
  std::array<double, 3> direction = {0, 0, 0};  // zeros = downward default

  std::string stencil_mode = "auto";  // auto | rect | randomized
  int sketch_r = 0;                   // 0 = 4 * 3^dim
  uint64_t seed = 12345;

  SolveOptions gmres_opts;

  std::vector<double> bench_omegas;  // Helmholtz sweep
  std::vector<double> bench_ns;      // Laplace sweep
  bool bench_contrast = true;

  std::string output_dir = ".";
  bool emit_fields = false;
  bool emit_plots = false;
  bool with_contrast = false;  // run unpreconditioned GMRES alongside

  static RunConfig from_config(const Config& cfg);
  /// Grid points per dimension: explicit n, else floor(ppw omega / 2 pi),
  /// which reproduces the reference N for every tabulated frequency.
  int derived_n() const;
  bool randomized_stencils() const;
};

struct SolveReport {
  EquationKind kind = EquationKind::helmholtz;
  int dim = 0, n = 0;
  double omega = 0, h = 0;
  int64_t num_points = 0;
  double min_c = 1, max_abs_v = 0;
  bool randomized = false;

  double setup_seconds = 0, apply_seconds = 0, solve_seconds = 0;
  int iterations = 0;
  bool converged = false;
  double true_residual = 0, precond_residual = 0;

  double interior_sigma = 0;
  double boundary_sigma_max = 0;            // worst class / point residual
  std::map<int, double> class_sigmas;       // per orientation class (rect runs)
  double point_sigma_median = 0;            // randomized runs
  int64_t factor_nnz = 0;
  int pivot_perturbations = 0;

  int contrast_iterations = -1;  // unpreconditioned; -1 = not run
  bool contrast_converged = false;
  std::vector<double> residual_history;

  std::string text() const;
  std::string machine_line(const char* tag = "report") const;
};

/// setup -> factorize -> iterate; emits fields/plots on request.
SolveReport run_solve(const RunConfig& cfg);

struct ValidateReport {
  int64_t num_points = 0;
  int iterations = 0;
  double rel_diff = 0;           // |u_gmres - u_dense| / |u_dense|
  double gmres_residual = 0;     // true relative residual of the GMRES solution
  double dense_residual = 0;     // same for the dense LU solution
  std::string text() const;
};

/// Dense-LU oracle comparison; guarded to N <= 5000.
ValidateReport run_validate(const RunConfig& cfg);

struct BenchReport {
  std::vector<SolveReport> rows;
  std::vector<std::string> errors;  // per failed row, empty when clean
  std::string text() const;
  bool all_converged() const;
};

/// One solve per sweep value (omega for Helmholtz, n for Laplace), with an
/// unpreconditioned contrast run when bench.contrast is on.
BenchReport run_bench(const RunConfig& cfg);

/// Derived sizes without running: n, h, N, interior/boundary counts.
std::string run_info(const RunConfig& cfg);

/// Dense assembly of I + K q (col-major N x N); validation oracle.
std::vector<cplx> assemble_dense(const KernelCoeffs& coeffs, const Grid& grid,
                                 const Medium& medium);

void write_text_file(const std::string& dir, const std::string& name,
                     const std::string& content);

}  // namespace lss

#endif  // LSS_DRIVER_HPP
