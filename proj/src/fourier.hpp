#pragma once

// Internal: reusable conjugate-grid transform (FFTW plan + phase tables).

#include <fftw3.h>

#include <complex>
#include <vector>

#include "itkit/grid.hpp"

namespace itkit::detail {

/// Transforms sample vectors between `grid` and `grid.conjugate()` with the
/// symmetric (2 pi hbar)^(-d/2) convention, honouring both grid origins.
class FourierTransformer {
 public:
  explicit FourierTransformer(const Grid& grid);
  ~FourierTransformer();
  FourierTransformer(const FourierTransformer&) = delete;
  FourierTransformer& operator=(const FourierTransformer&) = delete;

  /// grid -> grid.conjugate()
  void forward(std::vector<std::complex<double>>& values);
  /// grid.conjugate() -> grid
  void backward(std::vector<std::complex<double>>& values);

  // Raw access for loops that fold the phase tables into their own diagonal
  // factors: forward = post * scale * DFT(pre * in), likewise backward.
  std::complex<double>* buffer() { return reinterpret_cast<std::complex<double>*>(buffer_); }
  void execute_forward() { fftw_execute(fwd_plan_); }
  void execute_backward() { fftw_execute(bwd_plan_); }
  const std::vector<std::complex<double>>& forward_pre() const { return fwd_pre_; }
  const std::vector<std::complex<double>>& forward_post() const { return fwd_post_; }
  const std::vector<std::complex<double>>& backward_pre() const { return bwd_pre_; }
  const std::vector<std::complex<double>>& backward_post() const { return bwd_post_; }
  double forward_scale() const { return fwd_scale_; }
  double backward_scale() const { return bwd_scale_; }
  const Grid& grid() const { return grid_; }
  const Grid& dual() const { return dual_; }

 private:
  Grid grid_;
  Grid dual_;
  std::vector<std::complex<double>> fwd_pre_, fwd_post_, bwd_pre_, bwd_post_;
  double fwd_scale_ = 1.0;
  double bwd_scale_ = 1.0;
  fftw_complex* buffer_ = nullptr;
  fftw_plan fwd_plan_ = nullptr;
  fftw_plan bwd_plan_ = nullptr;
};

}  // namespace itkit::detail
