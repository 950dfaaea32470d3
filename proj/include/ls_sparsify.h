/* Copyright (c) 2026 The ls-sparsify authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the ls-sparsify solver engine. All state lives behind opaque
 * handles; functions return LSS_OK (0) or a negative error code, with a
 * thread-local detail message available from lss_last_error(). Solver
 * outcomes (converged or not) are properties of the report, not error codes.
 */

#ifndef LS_SPARSIFY_H
#define LS_SPARSIFY_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define LSS_OK 0
#define LSS_ERR_INVALID_ARGUMENT (-1)
#define LSS_ERR_CONFIG (-2)
#define LSS_ERR_IO (-3)
#define LSS_ERR_GUARD (-4)   /* size guard tripped (validate / direct apply) */
#define LSS_ERR_INTERNAL (-5)

typedef struct lss_config lss_config;
typedef struct lss_report lss_report;

/* ---- configuration ---------------------------------------------------- */

int lss_config_create(lss_config** out);
void lss_config_free(lss_config* cfg);

/* Merges an INI file ([section] + key = value) into the config. */
int lss_config_load_file(lss_config* cfg, const char* path);

/* Sets one dotted key, e.g. ("gmres.tol", "1e-8"). */
int lss_config_set(lss_config* cfg, const char* key, const char* value);

/* Copies the value of a key into buf (NUL-terminated, truncating at cap).
 * Returns LSS_ERR_INVALID_ARGUMENT when the key is unset. */
int lss_config_get(const lss_config* cfg, const char* key, char* buf, size_t cap);

/* ---- runs ------------------------------------------------------------- */

/* Full solve: setup, factorization, preconditioned GMRES, emissions. */
int lss_solve(const lss_config* cfg, lss_report** out);

/* Dense-LU oracle comparison (N <= 5000). */
int lss_validate(const lss_config* cfg, lss_report** out);

/* Sweep over bench.omegas (Helmholtz) or bench.ns (Laplace). */
int lss_bench(const lss_config* cfg, lss_report** out);

/* Derived sizes only; never factorizes. */
int lss_info(const lss_config* cfg, lss_report** out);

/* ---- reports ----------------------------------------------------------- */

/* Human-readable report block (also written to <output.dir>/report.txt by
 * the run functions above). Valid until lss_report_free. */
const char* lss_report_text(const lss_report* rep);

/* 1 when the run (every row, for bench) converged, else 0. */
int lss_report_converged(const lss_report* rep);

/* Scalar lookup (e.g. "np", "N", "Ts", "resid", or "rows"). Returns LSS_OK
 * and stores into *value when present. For bench reports, keys take a row
 * prefix: "0.np", "1.Ts", ... */
int lss_report_value(const lss_report* rep, const char* key, double* value);

void lss_report_free(lss_report* rep);

/* ---- diagnostics ------------------------------------------------------- */

const char* lss_strerror(int code);

/* Detail message of the most recent failure on this thread ("" if none). */
const char* lss_last_error(void);

const char* lss_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LS_SPARSIFY_H */
