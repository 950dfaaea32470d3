// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_IO_HPP
#define LSS_IO_HPP

#include <string>

#include "lss/grid.hpp"

namespace lss {

/// Field file: magic "LSFLD1\n", ASCII header "dim n kind\n" with kind
/// "full" (all lattice points are members) or "masked" (an n^dim 0/1
/// membership bitmap precedes the data), then N little-endian double pairs
/// (re, im) over member points in lexicographic order.
void write_field(const Field& field, const Grid& grid, const std::string& path);

struct LoadedField {
  Field field;
  int dim = 0, n = 0;
  std::vector<uint8_t> member;  // lattice occupancy
};

LoadedField read_field(const std::string& path);

/// 8-bit binary PGM of a scalar mapping of the field (real part, or
/// log10|.|), middle i3-slice for 3D. Values map linearly over [lo, hi];
/// non-member pixels render at the level of value 0.
enum class PlotScale { real_symmetric, log_abs };
void write_plot(const Field& field, const Grid& grid, PlotScale scale,
                const std::string& path);

}  // namespace lss

#endif  // LSS_IO_HPP
