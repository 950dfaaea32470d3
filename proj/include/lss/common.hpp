// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_COMMON_HPP
#define LSS_COMMON_HPP

#include <array>
#include <chrono>
#include <complex>
#include <cstdint>
#include <vector>

namespace lss {

using cplx = std::complex<double>;
using Field = std::vector<cplx>;

constexpr double kPi = 3.14159265358979323846264338327950288;

/// Lattice multi-index. The third component is 0 and ignored in 2D.
using Index = std::array<int, 3>;

inline int64_t pow_int(int64_t base, int exp) {
  int64_t r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

inline double norm2(const Field& v) {
  double s = 0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline double rel_diff(const Field& a, const Field& b) {
  double num = 0, den = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline cplx dotu(const Field& a, const Field& b) {
  cplx s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double>(d).count();
  }
  void reset() { start_ = std::chrono::steady_clock::now(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace lss

#endif  // LSS_COMMON_HPP
