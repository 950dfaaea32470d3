// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lss {

namespace {

void finalize_membership(Grid& g) {
  const int64_t lattice_size = pow_int(g.n, g.dim);
  g.member_id.assign(lattice_size, -1);
  g.lattice_of.clear();
  g.num_members = 0;
  Index i{0, 0, 0};
  for (int64_t lin = 0; lin < lattice_size; ++lin) {
    if (g.member[lin]) {
      g.member_id[lin] = g.num_members++;
      g.lattice_of.push_back(i);
    }
    // advance lexicographic multi-index
    for (int d = g.dim - 1; d >= 0; --d) {
      if (++i[d] < g.n) break;
      i[d] = 0;
    }
  }
  if (g.num_members == 0) throw std::invalid_argument("grid: shape has no member points");
}

}  // namespace

Grid build_grid(int dim, int n, Shape shape, const ShapeParams& params) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("grid: dim must be 2 or 3");
  if (n < 4) throw std::invalid_argument("grid: n must be at least 4");
  if (shape == Shape::explicit_mask) return build_grid_from_mask(params.mask_path);
  if (shape != Shape::rectangle && !(params.radius > 0.0 && params.radius <= 0.7)) {
    throw std::invalid_argument("grid: ball radius must lie in (0, 0.7]");
  }

  Grid g;
  g.dim = dim;
  g.n = n;
  g.h = 1.0 / n;
  g.shape = shape;
  const int64_t lattice_size = pow_int(n, dim);
  g.member.assign(lattice_size, 1);

  if (shape != Shape::rectangle) {
    Index i{0, 0, 0};
    for (int64_t lin = 0; lin < lattice_size; ++lin) {
      double l2 = 0, l1 = 0;
      for (int d = 0; d < dim; ++d) {
        const double c = g.coord(i[d]) - 0.5;
        l2 += c * c;
        l1 += std::abs(c);
      }
      const double gauge = (shape == Shape::l2ball) ? std::sqrt(l2) : l1;
      g.member[lin] = gauge <= params.radius ? 1 : 0;
      for (int d = dim - 1; d >= 0; --d) {
        if (++i[d] < n) break;
        i[d] = 0;
      }
    }
  }
  finalize_membership(g);
  return g;
}

Grid build_grid_from_mask(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("grid: cannot open mask file " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic;
  int dim = 0, n = 0;
  hs >> magic >> dim >> n;
  if (magic != "LSMASK" || (dim != 2 && dim != 3) || n < 4) {
    throw std::runtime_error("grid: bad LSMASK header in " + path);
  }
  Grid g;
  g.dim = dim;
  g.n = n;
  g.h = 1.0 / n;
  g.shape = Shape::explicit_mask;
  const int64_t lattice_size = pow_int(n, dim);
  std::vector<char> raw(lattice_size);
  in.read(raw.data(), lattice_size);
  if (in.gcount() != lattice_size) throw std::runtime_error("grid: truncated mask file " + path);
  g.member.resize(lattice_size);
  for (int64_t k = 0; k < lattice_size; ++k) g.member[k] = raw[k] ? 1 : 0;
  finalize_membership(g);
  return g;
}

void write_mask(const Grid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("grid: cannot write mask file " + path);
  out << "LSMASK " << grid.dim << " " << grid.n << "\n";
  std::vector<char> raw(grid.member.begin(), grid.member.end());
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

std::vector<int64_t> neighborhood(const Grid& grid, int64_t member) {
  const Index& c = grid.lattice_of[member];
  std::vector<int64_t> mu;
  mu.reserve(grid.dim == 2 ? 9 : 27);
  const int lo2 = grid.dim == 3 ? -1 : 0, hi2 = grid.dim == 3 ? 1 : 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int cc = lo2; cc <= hi2; ++cc) {
        const Index j{c[0] + a, c[1] + b, c[2] + cc};
        if (grid.is_member(j)) mu.push_back(grid.member_id[grid.lattice_index(j)]);
      }
  return mu;
}

Classification classify(const Grid& grid) {
  Classification cls;
  cls.is_interior.assign(grid.num_members, 1);
  cls.orient.assign(grid.num_members, {0, 0, 0});
  const int lo2 = grid.dim == 3 ? -1 : 0, hi2 = grid.dim == 3 ? 1 : 0;
  for (int64_t m = 0; m < grid.num_members; ++m) {
    const Index& c = grid.lattice_of[m];
    bool interior = true;
    for (int a = -1; a <= 1 && interior; ++a)
      for (int b = -1; b <= 1 && interior; ++b)
        for (int cc = lo2; cc <= hi2 && interior; ++cc) {
          if (!grid.is_member({c[0] + a, c[1] + b, c[2] + cc})) interior = false;
        }
    cls.is_interior[m] = interior ? 1 : 0;
    (interior ? cls.interior : cls.boundary).push_back(m);
    if (!interior && grid.shape == Shape::rectangle) {
      for (int d = 0; d < grid.dim; ++d) {
        if (c[d] == 0) cls.orient[m][d] = -1;
        else if (c[d] == grid.n - 1) cls.orient[m][d] = 1;
      }
    }
  }
  return cls;
}

}  // namespace lss
