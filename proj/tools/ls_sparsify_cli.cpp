// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Links only the C API of the shared library.
//
//   ls-sparsify <solve|bench|validate|info> [--config <path>]
//               [--key value ...] [--emit-fields] [--emit-plots]
//               [--output-dir <path>]
//
// Any --section.key flag overrides the matching config entry. Exit code 0
// on convergence, 2 on non-convergence, 1 on error.

#include <stdio.h>
#include <string.h>

#include "ls_sparsify.h"

static void usage(FILE* out) {
  fprintf(out,
          "usage: ls-sparsify <solve|bench|validate|info> [--config <path>]\n"
          "                   [--<section>.<key> <value> ...]\n"
          "                   [--emit-fields] [--emit-plots] [--output-dir <path>]\n"
          "\n"
          "config keys (INI sections become dotted prefixes):\n"
          "  problem.kind=helmholtz|laplace  problem.dim=2|3  problem.omega=<w>\n"
          "  grid.ppw=6  grid.n=<n>  grid.shape=rectangle|l2ball|l1ball|explicit-mask\n"
          "  grid.radius=<r>  grid.mask=<path>\n"
          "  medium.name=gaussian-bump|square-cavity|cube-cavity|l2ball-cavity|\n"
          "              l1ball-cavity|laplace-gaussian|laplace-ball\n"
          "  medium.buffer=6  medium.depth  medium.sigma  medium.eta ...\n"
          "  stencil.mode=auto|rect|randomized  stencil.r  stencil.seed\n"
          "  gmres.tol=1e-6  gmres.maxit=200\n"
          "  bench.omegas=100,200,400  bench.ns=23,46  bench.contrast=true\n"
          "  output.dir=.  output.emit-fields  output.emit-plots\n");
}

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(stderr);
    return 1;
  }
  const char* cmd = argv[1];
  if (strcmp(cmd, "--help") == 0 || strcmp(cmd, "-h") == 0) {
    usage(stdout);
    return 0;
  }
  if (strcmp(cmd, "solve") && strcmp(cmd, "bench") && strcmp(cmd, "validate") &&
      strcmp(cmd, "info")) {
    fprintf(stderr, "ls-sparsify: unknown subcommand '%s'\n", cmd);
    usage(stderr);
    return 1;
  }

  lss_config* cfg = NULL;
  int rc = lss_config_create(&cfg);
  if (rc != LSS_OK) {
    fprintf(stderr, "ls-sparsify: %s\n", lss_strerror(rc));
    return 1;
  }

  for (int i = 2; i < argc; ++i) {
    const char* arg = argv[i];
    if (strncmp(arg, "--", 2) != 0) {
      fprintf(stderr, "ls-sparsify: unexpected argument '%s'\n", arg);
      lss_config_free(cfg);
      return 1;
    }
    const char* key = arg + 2;
    if (strcmp(key, "emit-fields") == 0) {
      rc = lss_config_set(cfg, "output.emit-fields", "true");
    } else if (strcmp(key, "emit-plots") == 0) {
      rc = lss_config_set(cfg, "output.emit-plots", "true");
    } else if (strcmp(key, "config") == 0 || strcmp(key, "output-dir") == 0) {
      if (i + 1 >= argc) {
        fprintf(stderr, "ls-sparsify: --%s needs a value\n", key);
        lss_config_free(cfg);
        return 1;
      }
      const char* value = argv[++i];
      rc = strcmp(key, "config") == 0 ? lss_config_load_file(cfg, value)
                                      : lss_config_set(cfg, "output.dir", value);
    } else {
      if (i + 1 >= argc) {
        fprintf(stderr, "ls-sparsify: --%s needs a value\n", key);
        lss_config_free(cfg);
        return 1;
      }
      rc = lss_config_set(cfg, key, argv[++i]);
    }
    if (rc != LSS_OK) {
      fprintf(stderr, "ls-sparsify: %s: %s\n", lss_strerror(rc), lss_last_error());
      lss_config_free(cfg);
      return 1;
    }
  }

  lss_report* rep = NULL;
  if (strcmp(cmd, "solve") == 0) rc = lss_solve(cfg, &rep);
  else if (strcmp(cmd, "bench") == 0) rc = lss_bench(cfg, &rep);
  else if (strcmp(cmd, "validate") == 0) rc = lss_validate(cfg, &rep);
  else rc = lss_info(cfg, &rep);

  int exit_code;
  if (rc != LSS_OK) {
    fprintf(stderr, "ls-sparsify: %s: %s\n", lss_strerror(rc), lss_last_error());
    exit_code = 1;
  } else {
    fputs(lss_report_text(rep), stdout);
    exit_code = lss_report_converged(rep) ? 0 : 2;
  }
  lss_report_free(rep);
  lss_config_free(cfg);
  return exit_code;
}
