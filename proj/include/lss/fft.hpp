// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_FFT_HPP
#define LSS_FFT_HPP

#include <memory>

#include "lss/common.hpp"

namespace lss {

/// Complex-to-complex FFT of a dim-dimensional cube with m points per side,
/// backed by FFTW. Plans are created once (FFTW_ESTIMATE | FFTW_UNALIGNED)
/// and executed on caller arrays, so a const plan is safe to share across
/// threads operating on distinct buffers.
class FftPlan {
 public:
  FftPlan(int dim, int m);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  int size_per_dim() const { return m_; }
  int64_t total_size() const { return total_; }

  void forward(cplx* data) const;
  /// Inverse transform including the 1/m^dim normalization.
  void inverse(cplx* data) const;

 private:
  int dim_, m_;
  int64_t total_;
  void* plan_fwd_;
  void* plan_bwd_;
};

}  // namespace lss

#endif  // LSS_FFT_HPP
