// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_RNG_HPP
#define LSS_RNG_HPP

#include <cmath>
#include <cstdint>

#include "lss/common.hpp"

namespace lss {

/// SplitMix64 stream. Used instead of <random> engines so that sketch
/// matrices are bitwise reproducible across platforms and library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1].
  double uniform() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard complex Gaussian, E|z|^2 = 1, via Box-Muller.
  cplx gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return cplx(r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2));
  }

 private:
  uint64_t state_;
};

}  // namespace lss

#endif  // LSS_RNG_HPP
