// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "ls_sparsify.h"

#include <cstring>
#include <map>
#include <string>

#include "lss/config.hpp"
#include "lss/driver.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

int classify_exception(const std::exception& e) {
  const std::string what = e.what();
  if (what.find("guard") != std::string::npos) return LSS_ERR_GUARD;
  if (what.find("config") != std::string::npos) return LSS_ERR_CONFIG;
  if (what.find("cannot open") != std::string::npos ||
      what.find("write") != std::string::npos) {
    return LSS_ERR_IO;
  }
  return LSS_ERR_INTERNAL;
}

}  // namespace

struct lss_config {
  lss::Config cfg;
};

struct lss_report {
  std::string text;
  bool converged = false;
  std::map<std::string, double> values;
};

namespace {

void stash_solve_values(const lss::SolveReport& r, const std::string& prefix,
                        lss_report* rep) {
  auto& m = rep->values;
  m[prefix + "omega"] = r.omega;
  m[prefix + "maxV"] = r.max_abs_v;
  m[prefix + "n"] = r.n;
  m[prefix + "N"] = static_cast<double>(r.num_points);
  m[prefix + "Ts"] = r.setup_seconds;
  m[prefix + "Ta"] = r.apply_seconds;
  m[prefix + "np"] = r.iterations;
  m[prefix + "Tp"] = r.solve_seconds;
  m[prefix + "resid"] = r.true_residual;
  m[prefix + "converged"] = r.converged ? 1.0 : 0.0;
  m[prefix + "perturb"] = r.pivot_perturbations;
  m[prefix + "nnzF"] = static_cast<double>(r.factor_nnz);
  if (r.contrast_iterations >= 0) {
    m[prefix + "np_unprec"] = r.contrast_iterations;
    m[prefix + "unprec_converged"] = r.contrast_converged ? 1.0 : 0.0;
  }
}

template <typename Fn>
int run_guarded(const lss_config* cfg, lss_report** out, Fn&& body) {
  if (!cfg || !out) return fail(LSS_ERR_INVALID_ARGUMENT, "null config or output");
  *out = nullptr;
  try {
    auto rep = std::make_unique<lss_report>();
    body(lss::RunConfig::from_config(cfg->cfg), rep.get());
    *out = rep.release();
    return LSS_OK;
  } catch (const std::exception& e) {
    return fail(classify_exception(e), e.what());
  }
}

}  // namespace

extern "C" {

int lss_config_create(lss_config** out) {
  if (!out) return fail(LSS_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = new lss_config();
  return LSS_OK;
}

void lss_config_free(lss_config* cfg) { delete cfg; }

int lss_config_load_file(lss_config* cfg, const char* path) {
  if (!cfg || !path) return fail(LSS_ERR_INVALID_ARGUMENT, "null config or path");
  try {
    const lss::Config loaded = lss::Config::load(path);
    for (const auto& [k, v] : loaded.entries()) cfg->cfg.set(k, v);
    return LSS_OK;
  } catch (const std::exception& e) {
    return fail(LSS_ERR_IO, e.what());
  }
}

int lss_config_set(lss_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value || !*key) {
    return fail(LSS_ERR_INVALID_ARGUMENT, "null config, key, or value");
  }
  cfg->cfg.set(key, value);
  return LSS_OK;
}

int lss_config_get(const lss_config* cfg, const char* key, char* buf, size_t cap) {
  if (!cfg || !key || !buf || cap == 0) {
    return fail(LSS_ERR_INVALID_ARGUMENT, "null config, key, or buffer");
  }
  if (!cfg->cfg.has(key)) return fail(LSS_ERR_INVALID_ARGUMENT, "unset key");
  const std::string v = cfg->cfg.get_string(key, "");
  std::strncpy(buf, v.c_str(), cap - 1);
  buf[cap - 1] = '\0';
  return LSS_OK;
}

int lss_solve(const lss_config* cfg, lss_report** out) {
  return run_guarded(cfg, out, [](const lss::RunConfig& rc, lss_report* rep) {
    const lss::SolveReport r = lss::run_solve(rc);
    rep->text = r.text() + r.machine_line() + "\n";
    rep->converged = r.converged;
    stash_solve_values(r, "", rep);
    lss::write_text_file(rc.output_dir, "report.txt", rep->text);
  });
}

int lss_validate(const lss_config* cfg, lss_report** out) {
  return run_guarded(cfg, out, [](const lss::RunConfig& rc, lss_report* rep) {
    const lss::ValidateReport r = lss::run_validate(rc);
    rep->text = r.text();
    rep->converged = true;
    rep->values["N"] = static_cast<double>(r.num_points);
    rep->values["np"] = r.iterations;
    rep->values["reldiff"] = r.rel_diff;
    rep->values["resid_gmres"] = r.gmres_residual;
    rep->values["resid_dense"] = r.dense_residual;
    lss::write_text_file(rc.output_dir, "report.txt", rep->text);
  });
}

int lss_bench(const lss_config* cfg, lss_report** out) {
  return run_guarded(cfg, out, [](const lss::RunConfig& rc, lss_report* rep) {
    const lss::BenchReport r = lss::run_bench(rc);
    rep->text = r.text();
    rep->converged = r.all_converged();
    rep->values["rows"] = static_cast<double>(r.rows.size());
    for (size_t i = 0; i < r.rows.size(); ++i) {
      if (r.errors[i].empty()) {
        stash_solve_values(r.rows[i], std::to_string(i) + ".", rep);
      }
    }
    lss::write_text_file(rc.output_dir, "report.txt", rep->text);
  });
}

int lss_info(const lss_config* cfg, lss_report** out) {
  return run_guarded(cfg, out, [](const lss::RunConfig& rc, lss_report* rep) {
    rep->text = lss::run_info(rc);
    rep->converged = true;
  });
}

const char* lss_report_text(const lss_report* rep) { return rep ? rep->text.c_str() : ""; }

int lss_report_converged(const lss_report* rep) {
  return rep && rep->converged ? 1 : 0;
}

int lss_report_value(const lss_report* rep, const char* key, double* value) {
  if (!rep || !key || !value) return fail(LSS_ERR_INVALID_ARGUMENT, "null report or key");
  const auto it = rep->values.find(key);
  if (it == rep->values.end()) return fail(LSS_ERR_INVALID_ARGUMENT, "unknown report key");
  *value = it->second;
  return LSS_OK;
}

void lss_report_free(lss_report* rep) { delete rep; }

const char* lss_strerror(int code) {
  switch (code) {
    case LSS_OK: return "ok";
    case LSS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LSS_ERR_CONFIG: return "configuration error";
    case LSS_ERR_IO: return "i/o error";
    case LSS_ERR_GUARD: return "size guard tripped";
    default: return "internal error";
  }
}

const char* lss_last_error(void) { return g_last_error.c_str(); }

const char* lss_version(void) { return "ls-sparsify 1.0.0"; }

}  // extern "C"
