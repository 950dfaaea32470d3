// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lss/dense.hpp"
#include "lss/io.hpp"

namespace lss {

namespace {

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

Shape parse_shape(const std::string& s) {
  if (s == "rectangle") return Shape::rectangle;
  if (s == "l2ball") return Shape::l2ball;
  if (s == "l1ball") return Shape::l1ball;
  if (s == "explicit-mask") return Shape::explicit_mask;
  throw std::runtime_error("config: unknown shape '" + s + "'");
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::rectangle: return "rectangle";
    case Shape::l2ball: return "l2ball";
    case Shape::l1ball: return "l1ball";
    default: return "explicit-mask";
  }
}

// Everything run_solve builds before iterating.
struct Pipeline {
  Grid grid;
  Classification cls;
  Medium medium;
  KernelCoeffs coeffs;
  StencilSet stencils;
  SparseSystem p, ab;
  NdOrdering order;
  Factorization fact;
  double setup_seconds = 0;
};

Pipeline setup_pipeline(const RunConfig& cfg) {
  Pipeline pl;
  Timer t;
  const int n = cfg.derived_n();
  pl.grid = build_grid(cfg.dim, n, cfg.shape, cfg.shape_params);
  pl.cls = classify(pl.grid);
  pl.medium = build_medium(pl.grid, cfg.medium_name, cfg.medium_params, cfg.omega, cfg.buffer_b);

  if (cfg.kind == EquationKind::helmholtz) {
    // resolution guarantee: >= 4 points per local wavelength, with 5% slack
    // for the floor rounding of the derived n
    const double local_ppw = (2.0 * kPi * n / cfg.omega) * pl.medium.min_c;
    if (local_ppw < 3.8) {
      throw std::runtime_error(format(
          "config: only %.2f points per wavelength at min velocity; need >= 4", local_ppw));
    }
  }

  pl.coeffs = quadrature_coeffs(pl.grid, cfg.kind == EquationKind::laplace ? 0.0 : cfg.omega,
                                cfg.kind);
  const int r = cfg.sketch_r > 0 ? cfg.sketch_r : 4 * static_cast<int>(pow_int(3, cfg.dim));
  pl.stencils = build_stencils(pl.coeffs, pl.grid, pl.cls, pl.medium,
                               cfg.randomized_stencils(), r, cfg.seed);
  std::tie(pl.p, pl.ab) = assemble(pl.stencils, pl.medium, pl.grid, pl.cls);
  pl.order = nd_order(pl.grid, pl.cls);
  pl.fact = factorize(pl.p, pl.order);
  pl.setup_seconds = t.seconds();
  return pl;
}

Field make_rhs(const RunConfig& cfg, const Pipeline& pl, Field* u_inc_out) {
  if (cfg.kind == EquationKind::laplace) {
    const Field f = delta_source(pl.grid, cfg.medium_params.source);
    return build_rhs(pl.coeffs, pl.grid, pl.medium, f);
  }
  std::array<double, 3> d = cfg.direction;
  if (d[0] == 0 && d[1] == 0 && d[2] == 0) {
    d = {0, 0, 0};
    d[cfg.dim - 1] = -1.0;  // plane wave pointing downward
  }
  Field u_inc = incident_plane_wave(pl.grid, cfg.omega, d);
  Field g = build_rhs(pl.coeffs, pl.grid, pl.medium, u_inc);
  if (u_inc_out) *u_inc_out = std::move(u_inc);
  return g;
}

void fill_report_setup(const RunConfig& cfg, const Pipeline& pl, SolveReport* rep) {
  rep->kind = cfg.kind;
  rep->dim = cfg.dim;
  rep->n = pl.grid.n;
  rep->h = pl.grid.h;
  rep->omega = cfg.kind == EquationKind::laplace ? 0.0 : cfg.omega;
  rep->num_points = pl.grid.num_members;
  rep->min_c = pl.medium.min_c;
  rep->max_abs_v = pl.medium.max_abs_v;
  rep->randomized = pl.stencils.randomized;
  rep->setup_seconds = pl.setup_seconds;
  rep->interior_sigma = pl.stencils.interior_sigma;
  rep->boundary_sigma_max = 0;
  if (pl.stencils.randomized) {
    std::vector<double> sig;
    for (int64_t i : pl.cls.boundary) {
      sig.push_back(pl.stencils.point_sigma[i]);
      rep->boundary_sigma_max = std::max(rep->boundary_sigma_max, pl.stencils.point_sigma[i]);
    }
    if (!sig.empty()) {
      std::nth_element(sig.begin(), sig.begin() + sig.size() / 2, sig.end());
      rep->point_sigma_median = sig[sig.size() / 2];
    }
  } else {
    rep->class_sigmas = pl.stencils.rect_sigma;
    for (const auto& [key, sigma] : pl.stencils.rect_sigma) {
      rep->boundary_sigma_max = std::max(rep->boundary_sigma_max, sigma);
    }
  }
  rep->factor_nnz = pl.fact.factor_nnz;
  rep->pivot_perturbations = pl.fact.pivot_perturbations();
}

}  // namespace

RunConfig RunConfig::from_config(const Config& c) {
  RunConfig r;
  const std::string kind = c.get_string("problem.kind", "helmholtz");
  if (kind == "helmholtz") r.kind = EquationKind::helmholtz;
  else if (kind == "laplace") r.kind = EquationKind::laplace;
  else throw std::runtime_error("config: unknown problem.kind '" + kind + "'");
  r.dim = static_cast<int>(c.get_int("problem.dim", r.kind == EquationKind::laplace ? 3 : 2));
  r.omega = c.get_double("problem.omega", 100.0);
  {
    const auto d = c.get_list("problem.direction");
    for (size_t i = 0; i < d.size() && i < 3; ++i) r.direction[i] = d[i];
  }

  r.ppw = c.get_double("grid.ppw", 6.0);
  r.explicit_n = static_cast<int>(c.get_int("grid.n", 0));
  r.shape = parse_shape(c.get_string("grid.shape", "rectangle"));
  r.shape_params.radius = c.get_double("grid.radius", 0.5);
  r.shape_params.mask_path = c.get_string("grid.mask", "");

  r.medium_name = c.get_string("medium.name",
                               r.kind == EquationKind::laplace ? "laplace-gaussian"
                                                               : "gaussian-bump");
  r.medium_params.depth = c.get_double("medium.depth", 1.0 / 3.0);
  r.medium_params.sigma = c.get_double("medium.sigma", 0.12);
  r.medium_params.outer = c.get_double("medium.outer", 0.3);
  r.medium_params.thickness = c.get_double("medium.thickness", 0.1);
  r.medium_params.smooth_pts = c.get_double("medium.smooth", 3.0);
  r.medium_params.smooth_width = c.get_double("medium.smooth-width", 0.032);
  r.medium_params.eta = c.get_double("medium.eta", 1.1);
  r.medium_params.ball_radius = c.get_double("medium.ball-radius", 0.25);
  {
    const auto s = c.get_list("medium.source");
    for (size_t i = 0; i < s.size() && i < 3; ++i) r.medium_params.source[i] = s[i];
  }
  r.buffer_b = static_cast<int>(c.get_int("medium.buffer", 6));

  r.stencil_mode = c.get_string("stencil.mode", "auto");
  if (r.stencil_mode != "auto" && r.stencil_mode != "rect" && r.stencil_mode != "randomized") {
    throw std::runtime_error("config: stencil.mode must be auto|rect|randomized");
  }
  r.sketch_r = static_cast<int>(c.get_int("stencil.r", 0));
  r.seed = static_cast<uint64_t>(c.get_int("stencil.seed", 12345));

  r.gmres_opts.tol = c.get_double("gmres.tol", 1e-6);
  r.gmres_opts.maxit = static_cast<int>(c.get_int("gmres.maxit", 200));

  r.bench_omegas = c.get_list("bench.omegas");
  r.bench_ns = c.get_list("bench.ns");
  r.bench_contrast = c.get_bool("bench.contrast", true);

  r.output_dir = c.get_string("output.dir", ".");
  r.emit_fields = c.get_bool("output.emit-fields", false);
  r.emit_plots = c.get_bool("output.emit-plots", false);
  return r;
}

int RunConfig::derived_n() const {
  if (explicit_n > 0) return explicit_n;
  if (kind == EquationKind::laplace) {
    throw std::runtime_error("config: Laplace runs need an explicit grid.n");
  }
  const int n = static_cast<int>(std::floor(ppw * omega / (2.0 * kPi)));
  return std::max(n, 8);
}

bool RunConfig::randomized_stencils() const {
  if (stencil_mode == "rect") return false;
  if (stencil_mode == "randomized") return true;
  return shape != Shape::rectangle;
}

SolveReport run_solve(const RunConfig& cfg) {
  Pipeline pl = setup_pipeline(cfg);
  SolveReport rep;
  fill_report_setup(cfg, pl, &rep);

  Field u_inc;
  const Field g = make_rhs(cfg, pl, &u_inc);

  // warm-up, then time one preconditioner application (T_a)
  Field rhs_pre = apply_preconditioner(pl.fact, pl.ab, g);
  Timer t_apply;
  rhs_pre = apply_preconditioner(pl.fact, pl.ab, g);
  rep.apply_seconds = t_apply.seconds();

  const LinearOp op = preconditioned_op(pl.coeffs, pl.grid, pl.medium, pl.fact, pl.ab);
  Timer t_solve;
  GmresResult gm = gmres(op, rhs_pre, cfg.gmres_opts);
  rep.solve_seconds = t_solve.seconds();
  rep.iterations = gm.iterations;
  rep.converged = gm.converged;
  rep.precond_residual = gm.residual_history.empty() ? 0.0 : gm.residual_history.back();
  rep.residual_history = gm.residual_history;

  const Field resid = forward_apply(pl.coeffs, pl.grid, pl.medium, gm.x);
  double num = 0, den = 0;
  for (size_t i = 0; i < g.size(); ++i) {
    num += std::norm(g[i] - resid[i]);
    den += std::norm(g[i]);
  }
  rep.true_residual = den > 0 ? std::sqrt(num / den) : 0.0;

  if (cfg.with_contrast) {
    const LinearOp plain = [&pl](const Field& v) {
      return forward_apply(pl.coeffs, pl.grid, pl.medium, v);
    };
    GmresResult un = gmres(plain, g, cfg.gmres_opts);
    rep.contrast_iterations = un.iterations;
    rep.contrast_converged = un.converged;
  }

  if (cfg.emit_fields || cfg.emit_plots) {
    std::filesystem::create_directories(cfg.output_dir);
    const std::string base = cfg.output_dir + "/";
    // velocity (Helmholtz) or potential (Laplace) over member points
    Field profile(pl.grid.num_members);
    for (int64_t i = 0; i < pl.grid.num_members; ++i) {
      if (cfg.kind == EquationKind::laplace) profile[i] = pl.medium.q[i];
      else {
        const double m = pl.medium.q[i].real() / (cfg.omega * cfg.omega);
        profile[i] = cplx(1.0 / std::sqrt(1.0 - m), 0.0);
      }
    }
    if (cfg.emit_fields) {
      write_field(gm.x, pl.grid, base + "u_scat.field");
      write_field(profile, pl.grid, base + (cfg.kind == EquationKind::laplace
                                                ? "potential.field"
                                                : "velocity.field"));
      if (cfg.kind == EquationKind::helmholtz) {
        Field total = gm.x;
        for (size_t i = 0; i < total.size(); ++i) total[i] += u_inc[i];
        write_field(total, pl.grid, base + "u_total.field");
      }
    }
    if (cfg.emit_plots) {
      if (cfg.kind == EquationKind::laplace) {
        write_plot(gm.x, pl.grid, PlotScale::log_abs, base + "u_log10.pgm");
        write_plot(profile, pl.grid, PlotScale::real_symmetric, base + "potential.pgm");
      } else {
        Field total = gm.x;
        for (size_t i = 0; i < total.size(); ++i) total[i] += u_inc[i];
        write_plot(total, pl.grid, PlotScale::real_symmetric, base + "u_total.pgm");
        write_plot(profile, pl.grid, PlotScale::real_symmetric, base + "velocity.pgm");
      }
    }
  }
  return rep;
}

std::vector<cplx> assemble_dense(const KernelCoeffs& coeffs, const Grid& grid,
                                 const Medium& medium) {
  const int64_t n = grid.num_members;
  if (n > 5000) throw std::invalid_argument("assemble_dense: guarded to N <= 5000");
  std::vector<cplx> a(n * n);
  for (int64_t j = 0; j < n; ++j) {
    const Index& jj = grid.lattice_of[j];
    const cplx qj = medium.q[j];
    cplx* col = a.data() + j * n;
    for (int64_t i = 0; i < n; ++i) {
      const Index& ii = grid.lattice_of[i];
      cplx v = coeffs.at({ii[0] - jj[0], ii[1] - jj[1], ii[2] - jj[2]}) * qj;
      if (i == j) v += 1.0;
      col[i] = v;
    }
  }
  return a;
}

ValidateReport run_validate(const RunConfig& cfg) {
  RunConfig local = cfg;
  local.with_contrast = false;
  local.emit_fields = local.emit_plots = false;

  {
    const Grid probe = build_grid(local.dim, local.derived_n(), local.shape,
                                  local.shape_params);
    if (probe.num_members > 5000) {
      throw std::runtime_error("validate: guarded to N <= 5000 points");
    }
  }
  Pipeline pl = setup_pipeline(local);
  const Field g = make_rhs(local, pl, nullptr);

  const LinearOp op = preconditioned_op(pl.coeffs, pl.grid, pl.medium, pl.fact, pl.ab);
  GmresResult gm = gmres(op, apply_preconditioner(pl.fact, pl.ab, g), local.gmres_opts);

  const DenseLU lu = dense_lu(assemble_dense(pl.coeffs, pl.grid, pl.medium),
                              static_cast<int>(pl.grid.num_members));
  Field u_dense = g;
  dense_lu_solve(lu, u_dense);

  ValidateReport rep;
  rep.num_points = pl.grid.num_members;
  rep.iterations = gm.iterations;
  rep.rel_diff = rel_diff(gm.x, u_dense);
  auto true_resid = [&](const Field& u) {
    const Field r = forward_apply(pl.coeffs, pl.grid, pl.medium, u);
    double num = 0, den = 0;
    for (size_t i = 0; i < g.size(); ++i) {
      num += std::norm(g[i] - r[i]);
      den += std::norm(g[i]);
    }
    return den > 0 ? std::sqrt(num / den) : 0.0;
  };
  rep.gmres_residual = true_resid(gm.x);
  rep.dense_residual = true_resid(u_dense);
  return rep;
}

BenchReport run_bench(const RunConfig& cfg) {
  BenchReport out;
  std::vector<double> sweep;
  const bool laplace = cfg.kind == EquationKind::laplace;
  sweep = laplace ? cfg.bench_ns : cfg.bench_omegas;
  if (sweep.empty()) {
    sweep = laplace ? std::vector<double>{static_cast<double>(cfg.explicit_n)}
                    : std::vector<double>{cfg.omega};
  }
  for (double v : sweep) {
    RunConfig row = cfg;
    row.with_contrast = cfg.bench_contrast;
    row.emit_fields = cfg.emit_fields;
    row.emit_plots = cfg.emit_plots;
    if (laplace) row.explicit_n = static_cast<int>(v);
    else row.omega = v;
    if (!laplace || sweep.size() > 1) {
      // keep per-row emissions apart
      if (row.emit_fields || row.emit_plots) {
        row.output_dir = cfg.output_dir + "/" + (laplace ? "n" : "omega") +
                         format("%g", v);
      }
    }
    try {
      out.rows.push_back(run_solve(row));
      out.errors.emplace_back();
    } catch (const std::exception& e) {
      out.rows.emplace_back();
      out.errors.emplace_back(e.what());
    }
  }
  return out;
}

std::string run_info(const RunConfig& cfg) {
  const int n = cfg.derived_n();
  const Grid grid = build_grid(cfg.dim, n, cfg.shape, cfg.shape_params);
  const Classification cls = classify(grid);
  std::ostringstream os;
  os << "ls-sparsify info\n";
  os << format("  problem:   %s, dim %d\n",
               cfg.kind == EquationKind::laplace ? "laplace" : "helmholtz", cfg.dim);
  if (cfg.kind == EquationKind::helmholtz) {
    os << format("  omega:     %.6g  (ppw %.3g)\n", cfg.omega, cfg.ppw);
  }
  os << format("  shape:     %s\n", shape_name(cfg.shape));
  os << format("  n:         %d\n", n);
  os << format("  h:         %.6e\n", grid.h);
  os << format("  N:         %lld\n", static_cast<long long>(grid.num_members));
  os << format("  N_I:       %lld\n", static_cast<long long>(cls.interior.size()));
  os << format("  N_B:       %lld\n", static_cast<long long>(cls.boundary.size()));
  os << format("  fft pad:   %d per dimension\n", 2 * n);
  os << format("  stencils:  %s\n", cfg.randomized_stencils() ? "randomized per-point"
                                                              : "deterministic classes");
  return os.str();
}

std::string SolveReport::text() const {
  std::ostringstream os;
  os << "ls-sparsify solve report\n";
  os << format("  problem:                %s, dim %d\n",
               kind == EquationKind::laplace ? "laplace" : "helmholtz", dim);
  if (kind == EquationKind::laplace) {
    os << format("  max |V|:                %.4e\n", max_abs_v);
  } else {
    os << format("  omega:                  %.6g\n", omega);
    os << format("  min velocity:           %.4f\n", min_c);
  }
  os << format("  grid:                   n=%d, h=%.4e, N=%lld\n", n, h,
               static_cast<long long>(num_points));
  os << format("  stencils:               %s\n",
               randomized ? "randomized per-point" : "deterministic classes");
  os << format("  interior sigma:         %.3e\n", interior_sigma);
  if (randomized) {
    os << format("  boundary sigma:         median %.3e, max %.3e (rel. to |T|)\n",
                 point_sigma_median, boundary_sigma_max);
  } else {
    os << format("  boundary sigma (max):   %.3e\n", boundary_sigma_max);
    for (const auto& [key, sigma] : class_sigmas) {
      // decode the orientation key back into per-axis side labels
      const int o[3] = {key / 9 - 1, (key / 3) % 3 - 1, key % 3 - 1};
      std::string label;
      for (int d = 0; d < 3; ++d) {
        if (o[d] == 0) continue;
        label += format("x%d%c", d, o[d] > 0 ? '+' : '-');
      }
      os << format("    class %-8s sigma:  %.3e\n", label.c_str(), sigma);
    }
  }
  os << format("  factor nonzeros:        %lld\n", static_cast<long long>(factor_nnz));
  os << format("  pivot perturbations:    %d\n", pivot_perturbations);
  os << format("  setup seconds (T_s):    %.3f\n", setup_seconds);
  os << format("  apply seconds (T_a):    %.4f\n", apply_seconds);
  os << format("  iterations (n_p):       %d%s\n", iterations,
               converged ? "" : "  [DID NOT CONVERGE]");
  os << format("  solve seconds (T_p):    %.3f\n", solve_seconds);
  os << format("  true rel residual:      %.3e\n", true_residual);
  os << format("  precond rel residual:   %.3e\n", precond_residual);
  if (!residual_history.empty()) {
    os << "  residual history:      ";
    for (double r : residual_history) os << format(" %.2e", r);
    os << "\n";
  }
  if (contrast_iterations >= 0) {
    if (contrast_converged) {
      os << format("  unpreconditioned n_p:   %d\n", contrast_iterations);
    } else {
      os << format("  unpreconditioned n_p:   >=%d (DNF)\n", contrast_iterations);
    }
  }
  return os.str();
}

std::string SolveReport::machine_line(const char* tag) const {
  std::ostringstream os;
  os << tag;
  os << format(" kind=%s dim=%d omega=%.8g maxV=%.8g n=%d N=%lld",
               kind == EquationKind::laplace ? "laplace" : "helmholtz", dim, omega, max_abs_v,
               n, static_cast<long long>(num_points));
  os << format(" Ts=%.6f Ta=%.6f np=%d Tp=%.6f resid=%.6e converged=%d", setup_seconds,
               apply_seconds, iterations, solve_seconds, true_residual, converged ? 1 : 0);
  os << format(" sigmaI=%.6e sigmaBmax=%.6e nnzF=%lld perturb=%d", interior_sigma,
               boundary_sigma_max, static_cast<long long>(factor_nnz), pivot_perturbations);
  if (contrast_iterations >= 0) {
    os << format(" np_unprec=%d unprec_converged=%d", contrast_iterations,
                 contrast_converged ? 1 : 0);
  }
  return os.str();
}

std::string ValidateReport::text() const {
  std::ostringstream os;
  os << "ls-sparsify validate report\n";
  os << format("  N:                      %lld\n", static_cast<long long>(num_points));
  os << format("  gmres iterations:       %d\n", iterations);
  os << format("  |u_gmres - u_dense| / |u_dense|: %.3e\n", rel_diff);
  os << format("  true residual (gmres):  %.3e\n", gmres_residual);
  os << format("  true residual (dense):  %.3e\n", dense_residual);
  os << "validate" << format(" N=%lld np=%d reldiff=%.6e resid_gmres=%.6e resid_dense=%.6e\n",
                             static_cast<long long>(num_points), iterations, rel_diff,
                             gmres_residual, dense_residual);
  return os.str();
}

std::string BenchReport::text() const {
  std::ostringstream os;
  os << "ls-sparsify bench report\n";
  const bool laplace = !rows.empty() && rows.front().kind == EquationKind::laplace;
  os << format("  %-12s %-10s %-9s %-9s %-5s %-9s %-10s %s\n",
               laplace ? "max|V|" : "omega", "N", "T_s", "T_a", "n_p", "T_p", "resid",
               "unprec");
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      os << format("  row %zu failed: %s\n", i, errors[i].c_str());
      continue;
    }
    const SolveReport& r = rows[i];
    std::string unprec = "-";
    if (r.contrast_iterations >= 0) {
      unprec = r.contrast_converged ? format("%d", r.contrast_iterations)
                                    : format(">=%d (DNF)", r.contrast_iterations);
    }
    os << format("  %-12.4e %-10lld %-9.3f %-9.4f %-5d %-9.3f %-10.2e %s%s\n",
                 laplace ? r.max_abs_v : r.omega, static_cast<long long>(r.num_points),
                 r.setup_seconds, r.apply_seconds, r.iterations, r.solve_seconds,
                 r.true_residual, unprec.c_str(), r.converged ? "" : "  [DNF]");
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    if (errors[i].empty()) os << rows[i].machine_line("bench_row") << "\n";
  }
  return os.str();
}

bool BenchReport::all_converged() const {
  if (rows.empty()) return false;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty() || !rows[i].converged) return false;
  }
  return true;
}

void write_text_file(const std::string& dir, const std::string& name,
                     const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name);
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
  out << content;
}

}  // namespace lss
