#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version (the default
// namespace) and a plain serial reference in `serial::` with identical
// semantics; tests compare the two and bench/ times them.

#include <complex>
#include <span>

#include "itkit/grid.hpp"

namespace itkit {

/// Selects the OpenMP kernels or their serial reference versions.
enum class Exec { Parallel, Serial };

namespace kernels {

using cplx = std::complex<double>;

/// values[i] *= exp(i * phases[i])
void apply_phase(std::span<cplx> values, std::span<const double> phases);

/// values[i] *= factors[i]
void multiply(std::span<cplx> values, std::span<const cplx> factors);

/// sum |values[i]|^2
double squared_norm(std::span<const cplx> values);

/// sum f(r) exp(i q.r) dV over the grid (plane-wave quadrature of a real
/// function).
cplx fourier_sum(const Grid& grid, std::span<const double> samples, const Vec& q);

/// 1-D direct quadrature with the free position-space propagator:
/// out(x) = sum_x' K(x, t; x', 0) in(x') dx', K = sqrt(m / (2 pi i hbar T)) exp(i m (x-x')^2 / (2 hbar T)).
/// `out_grid` and `in_grid` may differ.
void free_kernel_quadrature(const Grid& in_grid, std::span<const cplx> in, const Grid& out_grid,
                            double mass, double T, std::span<cplx> out);

namespace serial {
void apply_phase(std::span<cplx> values, std::span<const double> phases);
void multiply(std::span<cplx> values, std::span<const cplx> factors);
double squared_norm(std::span<const cplx> values);
cplx fourier_sum(const Grid& grid, std::span<const double> samples, const Vec& q);
void free_kernel_quadrature(const Grid& in_grid, std::span<const cplx> in, const Grid& out_grid,
                            double mass, double T, std::span<cplx> out);
}  // namespace serial

}  // namespace kernels
}  // namespace itkit
