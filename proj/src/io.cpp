// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lss {

namespace {

void write_le_doubles(std::ofstream& out, const double* p, size_t count) {
  // x86-64 and aarch64 are little-endian; write raw
  out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(count * sizeof(double)));
}

}  // namespace

void write_field(const Field& field, const Grid& grid, const std::string& path) {
  if (static_cast<int64_t>(field.size()) != grid.num_members) {
    throw std::invalid_argument("write_field: field size mismatch");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field: cannot open " + path);
  const bool full = grid.num_members == pow_int(grid.n, grid.dim);
  out << "LSFLD1\n" << grid.dim << " " << grid.n << " " << (full ? "full" : "masked") << "\n";
  if (!full) {
    std::vector<char> raw(grid.member.begin(), grid.member.end());
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  }
  static_assert(sizeof(cplx) == 2 * sizeof(double));
  write_le_doubles(out, reinterpret_cast<const double*>(field.data()), 2 * field.size());
  if (!out) throw std::runtime_error("write_field: write failed for " + path);
}

LoadedField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_field: cannot open " + path);
  std::string magic, kind;
  std::getline(in, magic);
  if (magic != "LSFLD1") throw std::runtime_error("read_field: bad magic in " + path);
  std::string header;
  std::getline(in, header);
  LoadedField lf;
  std::istringstream hs(header);
  hs >> lf.dim >> lf.n >> kind;
  if ((lf.dim != 2 && lf.dim != 3) || lf.n <= 0 || (kind != "full" && kind != "masked")) {
    throw std::runtime_error("read_field: bad header in " + path);
  }
  const int64_t lattice = pow_int(lf.n, lf.dim);
  int64_t count = lattice;
  if (kind == "masked") {
    std::vector<char> raw(lattice);
    in.read(raw.data(), lattice);
    lf.member.assign(raw.begin(), raw.end());
    count = 0;
    for (char c : raw) count += c ? 1 : 0;
  } else {
    lf.member.assign(lattice, 1);
  }
  lf.field.resize(count);
  in.read(reinterpret_cast<char*>(lf.field.data()),
          static_cast<std::streamsize>(count * sizeof(cplx)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(cplx))) {
    throw std::runtime_error("read_field: truncated data in " + path);
  }
  return lf;
}

void write_plot(const Field& field, const Grid& grid, PlotScale scale,
                const std::string& path) {
  if (static_cast<int64_t>(field.size()) != grid.num_members) {
    throw std::invalid_argument("write_plot: field size mismatch");
  }
  const int n = grid.n;
  // scalar value per lattice point of the plotted slice, NaN when absent
  std::vector<double> img(static_cast<size_t>(n) * n,
                          std::numeric_limits<double>::quiet_NaN());
  const int slice = (n + 1) / 2 - 1;  // middle cross-section, 3D only
  for (int64_t m = 0; m < grid.num_members; ++m) {
    const Index& i = grid.lattice_of[m];
    if (grid.dim == 3 && i[2] != slice) continue;
    const cplx z = field[m];
    const double v =
        scale == PlotScale::real_symmetric ? z.real() : std::log10(std::abs(z) + 1e-300);
    img[static_cast<size_t>(i[0]) * n + i[1]] = v;
  }

  double lo, hi;
  if (scale == PlotScale::real_symmetric) {
    double mx = 0;
    for (double v : img) {
      if (!std::isnan(v)) mx = std::max(mx, std::abs(v));
    }
    if (mx == 0) mx = 1;
    lo = -mx;
    hi = mx;
  } else {
    lo = 1e300;
    hi = -1e300;
    for (double v : img) {
      if (!std::isnan(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (!(hi > lo)) {
      lo -= 1;
      hi += 1;
    }
  }
  const double background = scale == PlotScale::real_symmetric ? 0.0 : lo;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_plot: cannot open " + path);
  out << "P5\n" << n << " " << n << "\n255\n";
  std::vector<unsigned char> row(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      // image row 0 on top = largest x1; columns follow x0
      double v = img[static_cast<size_t>(c) * n + (n - 1 - r)];
      if (std::isnan(v)) v = background;
      const double t = (v - lo) / (hi - lo);
      row[c] = static_cast<unsigned char>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
    }
    out.write(reinterpret_cast<const char*>(row.data()), n);
  }
  if (!out) throw std::runtime_error("write_plot: write failed for " + path);
}

}  // namespace lss
