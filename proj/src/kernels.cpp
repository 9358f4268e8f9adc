#include "itkit/kernels.hpp"

#include <cmath>

#include "itkit/error.hpp"
#include "itkit/units.hpp"

namespace itkit::kernels {

namespace {

// sqrt(m / (2 pi i hbar T)) on the principal branch.
cplx free_kernel_prefactor(double mass, double T) {
  return std::sqrt(mass / (kTwoPi * UnitSystem::hbar * T)) * std::polar(1.0, -kPi / 4.0);
}

void check_quadrature_args(const Grid& in_grid, std::span<const cplx> in, const Grid& out_grid,
                           std::span<cplx> out, double T) {
  require(in_grid.dimension() == 1 && out_grid.dimension() == 1, ErrorKind::Shape,
          "free_kernel_quadrature is one-dimensional");
  require(in.size() == in_grid.size() && out.size() == out_grid.size(), ErrorKind::Shape,
          "free_kernel_quadrature: sample count does not match grid");
  require(T > 0.0, ErrorKind::Domain, "free_kernel_quadrature: T must be positive");
}

}  // namespace

void apply_phase(std::span<cplx> values, std::span<const double> phases) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) values[i] *= std::polar(1.0, phases[i]);
}

void multiply(std::span<cplx> values, std::span<const cplx> factors) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) values[i] *= factors[i];
}

double squared_norm(std::span<const cplx> values) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) sum += std::norm(values[i]);
  return sum;
}

cplx fourier_sum(const Grid& grid, std::span<const double> samples, const Vec& q) {
  require(samples.size() == grid.size(), ErrorKind::Shape, "fourier_sum: sample count does not match grid");
  require(q.size() == grid.dimension(), ErrorKind::Shape, "fourier_sum: q has wrong dimension");
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  double re = 0.0;
  double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double f = samples[i];
    if (f == 0.0) continue;
    const double phase = q.dot(grid.point(static_cast<std::size_t>(i))) / UnitSystem::hbar;
    re += f * std::cos(phase);
    im += f * std::sin(phase);
  }
  return cplx(re, im) * grid.cell_volume();
}

void free_kernel_quadrature(const Grid& in_grid, std::span<const cplx> in, const Grid& out_grid,
                            double mass, double T, std::span<cplx> out) {
  check_quadrature_args(in_grid, in, out_grid, out, T);
  const Axis& xi = in_grid.axis(0);
  const Axis& xo = out_grid.axis(0);
  const cplx pref = free_kernel_prefactor(mass, T) * xi.spacing;
  const double k = mass / (2.0 * UnitSystem::hbar * T);
  const auto n_out = static_cast<std::ptrdiff_t>(xo.n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n_out; ++j) {
    const double x = xo.coord(static_cast<std::size_t>(j));
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < xi.n; ++i) {
      const double d = x - xi.coord(i);
      const double phase = k * d * d;
      const double c = std::cos(phase);
      const double s = std::sin(phase);
      re += in[i].real() * c - in[i].imag() * s;
      im += in[i].real() * s + in[i].imag() * c;
    }
    out[j] = pref * cplx(re, im);
  }
}

namespace serial {

void apply_phase(std::span<cplx> values, std::span<const double> phases) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= std::polar(1.0, phases[i]);
}

void multiply(std::span<cplx> values, std::span<const cplx> factors) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= factors[i];
}

double squared_norm(std::span<const cplx> values) {
  double sum = 0.0;
  for (const cplx& v : values) sum += std::norm(v);
  return sum;
}

cplx fourier_sum(const Grid& grid, std::span<const double> samples, const Vec& q) {
  require(samples.size() == grid.size(), ErrorKind::Shape, "fourier_sum: sample count does not match grid");
  require(q.size() == grid.dimension(), ErrorKind::Shape, "fourier_sum: q has wrong dimension");
  cplx sum(0.0, 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i] == 0.0) continue;
    sum += samples[i] * std::polar(1.0, q.dot(grid.point(i)) / UnitSystem::hbar);
  }
  return sum * grid.cell_volume();
}

void free_kernel_quadrature(const Grid& in_grid, std::span<const cplx> in, const Grid& out_grid,
                            double mass, double T, std::span<cplx> out) {
  check_quadrature_args(in_grid, in, out_grid, out, T);
  const Axis& xi = in_grid.axis(0);
  const Axis& xo = out_grid.axis(0);
  const cplx pref = free_kernel_prefactor(mass, T) * xi.spacing;
  const double k = mass / (2.0 * UnitSystem::hbar * T);
  for (std::size_t j = 0; j < xo.n; ++j) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < xi.n; ++i) {
      const double d = xo.coord(j) - xi.coord(i);
      acc += in[i] * std::polar(1.0, k * d * d);
    }
    out[j] = pref * acc;
  }
}

}  // namespace serial
}  // namespace itkit::kernels
