#include "fourier.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "itkit/error.hpp"
#include "itkit/kernels.hpp"
#include "itkit/units.hpp"

namespace itkit::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

using cplx = std::complex<double>;

// Flat table of prod_a exp(i * per_axis[a][i_a]).
std::vector<cplx> separable_factor(const Grid& grid, const std::vector<std::vector<double>>& per_axis,
                                   double constant_phase) {
  std::vector<cplx> out(grid.size());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto idx = grid.unravel(flat);
    double s = constant_phase;
    for (int a = 0; a < grid.dimension(); ++a)
      s += per_axis[static_cast<std::size_t>(a)][idx[static_cast<std::size_t>(a)]];
    out[flat] = std::polar(1.0, s);
  }
  return out;
}

}  // namespace

// Samples x_j = a + j dx on `src`, p_k = b + k dp on the conjugate grid, with
// dx dp = 2 pi hbar / N. For s = +1 (forward) and s = -1 (backward):
//   out_k = (dx / sqrt(2 pi hbar)) e^{-s i a b} e^{-s i a k dp} sum_j [in_j e^{-s i b j dx}] e^{-s 2 pi i jk/N}
FourierTransformer::FourierTransformer(const Grid& grid) : grid_(grid), dual_(grid.conjugate()) {
  const double hbar = UnitSystem::hbar;
  auto build = [&](const Grid& src, const Grid& dst, double s, std::vector<cplx>& pre, std::vector<cplx>& post,
                   double& scale) {
    std::vector<std::vector<double>> pre_axis(static_cast<std::size_t>(src.dimension()));
    std::vector<std::vector<double>> post_axis(static_cast<std::size_t>(src.dimension()));
    double constant = 0.0;
    scale = 1.0;
    for (int a = 0; a < src.dimension(); ++a) {
      const Axis& x = src.axis(a);
      const Axis& p = dst.axis(a);
      auto& pr = pre_axis[static_cast<std::size_t>(a)];
      auto& po = post_axis[static_cast<std::size_t>(a)];
      pr.resize(x.n);
      po.resize(x.n);
      for (std::size_t j = 0; j < x.n; ++j) pr[j] = -s * p.origin * (static_cast<double>(j) * x.spacing) / hbar;
      for (std::size_t k = 0; k < x.n; ++k) po[k] = -s * x.origin * (static_cast<double>(k) * p.spacing) / hbar;
      constant += -s * x.origin * p.origin / hbar;
      scale *= x.spacing / std::sqrt(kTwoPi * hbar);
    }
    pre = separable_factor(src, pre_axis, 0.0);
    post = separable_factor(dst, post_axis, constant);
  };
  build(grid_, dual_, +1.0, fwd_pre_, fwd_post_, fwd_scale_);
  build(dual_, grid_, -1.0, bwd_pre_, bwd_post_, bwd_scale_);

  std::array<int, 3> dims{};
  for (int a = 0; a < grid_.dimension(); ++a) dims[static_cast<std::size_t>(a)] = static_cast<int>(grid_.axis(a).n);
  std::lock_guard<std::mutex> lock(planner_mutex());
  buffer_ = fftw_alloc_complex(grid_.size());
  fwd_plan_ = fftw_plan_dft(grid_.dimension(), dims.data(), buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_plan_ = fftw_plan_dft(grid_.dimension(), dims.data(), buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (buffer_ == nullptr || fwd_plan_ == nullptr || bwd_plan_ == nullptr)
    fail(ErrorKind::Numerical, "FFTW failed to allocate a transform plan");
}

FourierTransformer::~FourierTransformer() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (fwd_plan_) fftw_destroy_plan(fwd_plan_);
  if (bwd_plan_) fftw_destroy_plan(bwd_plan_);
  if (buffer_) fftw_free(buffer_);
}

void FourierTransformer::forward(std::vector<cplx>& values) {
  require(values.size() == grid_.size(), ErrorKind::Shape, "transform: sample count does not match grid");
  auto* buf = reinterpret_cast<cplx*>(buffer_);
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) buf[i] = values[i] * fwd_pre_[i];
  fftw_execute(fwd_plan_);
  for (std::size_t i = 0; i < n; ++i) values[i] = buf[i] * fwd_post_[i] * fwd_scale_;
}

void FourierTransformer::backward(std::vector<cplx>& values) {
  require(values.size() == grid_.size(), ErrorKind::Shape, "transform: sample count does not match grid");
  auto* buf = reinterpret_cast<cplx*>(buffer_);
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) buf[i] = values[i] * bwd_pre_[i];
  fftw_execute(bwd_plan_);
  for (std::size_t i = 0; i < n; ++i) values[i] = buf[i] * bwd_post_[i] * bwd_scale_;
}

}  // namespace itkit::detail
