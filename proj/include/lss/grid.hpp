// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_GRID_HPP
#define LSS_GRID_HPP

#include <string>

#include "lss/common.hpp"

namespace lss {

enum class Shape { rectangle, l2ball, l1ball, explicit_mask };

struct ShapeParams {
  double radius = 0.5;    // gauge radius for l2ball / l1ball (clipped to the box)
  std::string mask_path;  // LSMASK raster for explicit_mask
};

/// Regular cell-centered lattice over the unit box with per-point domain
/// membership. Points are x_i = (i + 1/2) h componentwise, i in [0, n)^dim,
/// so no point touches the box boundary. Member points are numbered
/// consecutively in lexicographic lattice order.
struct Grid {
  int dim = 2;
  int n = 0;
  double h = 0;
  Shape shape = Shape::rectangle;

  std::vector<uint8_t> member;     // lattice occupancy, size n^dim
  std::vector<int64_t> member_id;  // lattice index -> member index, or -1
  std::vector<Index> lattice_of;   // member index -> multi-index
  int64_t num_members = 0;

  int64_t lattice_index(const Index& i) const {
    int64_t r = i[0];
    for (int d = 1; d < dim; ++d) r = r * n + i[d];
    return r;
  }
  bool in_box(const Index& i) const {
    for (int d = 0; d < dim; ++d)
      if (i[d] < 0 || i[d] >= n) return false;
    return true;
  }
  bool is_member(const Index& i) const {
    return in_box(i) && member[lattice_index(i)] != 0;
  }
  /// Cell-centered coordinate of lattice index i along axis d.
  double coord(int i) const { return (i + 0.5) * h; }
};

Grid build_grid(int dim, int n, Shape shape, const ShapeParams& params = {});

/// Parses an "LSMASK dim n" raster file; bytes 0/1 in lexicographic order.
Grid build_grid_from_mask(const std::string& path);
void write_mask(const Grid& grid, const std::string& path);

/// Member points within infinity-distance 1 of member point i, in
/// lexicographic offset order (i itself included).
std::vector<int64_t> neighborhood(const Grid& grid, int64_t member);

/// Interior / boundary split, plus the face/edge/corner orientation label
/// for rectangular grids: orient[d] = +1 at the high side, -1 at the low
/// side, 0 if free. Interior points have all-zero orientation.
struct Classification {
  std::vector<int64_t> interior, boundary;  // member indices
  std::vector<uint8_t> is_interior;         // per member
  std::vector<std::array<int8_t, 3>> orient;
};

Classification classify(const Grid& grid);

/// Encodes an orientation triple as a small integer key (interior -> 13).
inline int orient_key(const std::array<int8_t, 3>& o) {
  return (o[0] + 1) * 9 + (o[1] + 1) * 3 + (o[2] + 1);
}

}  // namespace lss

#endif  // LSS_GRID_HPP
