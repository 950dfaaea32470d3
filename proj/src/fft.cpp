// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/fft.hpp"

#include <fftw3.h>

#include <stdexcept>

namespace lss {

FftPlan::FftPlan(int dim, int m) : dim_(dim), m_(m), total_(pow_int(m, dim)) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("fft: dim must be 2 or 3");
  std::vector<cplx> scratch(total_);
  fftw_complex* p = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (dim == 2) {
    plan_fwd_ = fftw_plan_dft_2d(m, m, p, p, FFTW_FORWARD, flags);
    plan_bwd_ = fftw_plan_dft_2d(m, m, p, p, FFTW_BACKWARD, flags);
  } else {
    plan_fwd_ = fftw_plan_dft_3d(m, m, m, p, p, FFTW_FORWARD, flags);
    plan_bwd_ = fftw_plan_dft_3d(m, m, m, p, p, FFTW_BACKWARD, flags);
  }
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("fft: plan creation failed");
}

FftPlan::~FftPlan() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void FftPlan::forward(cplx* data) const {
  fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), p, p);
}

void FftPlan::inverse(cplx* data) const {
  fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), p, p);
  const double scale = 1.0 / static_cast<double>(total_);
  for (int64_t i = 0; i < total_; ++i) data[i] *= scale;
}

}  // namespace lss
