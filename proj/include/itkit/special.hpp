#pragma once

// Bessel functions of the first and second kind and the Hankel function
// H1 = J + iY for integer and half-integer orders at positive real argument.
// Ascending series below kSeriesLimit, Hankel asymptotic expansion above.

#include <complex>

namespace itkit::special {

inline constexpr double kSeriesLimit = 20.0;

/// True for nu in {0, 1/2, 1, 3/2, ...}.
bool supported_order(double nu);

double bessel_j(double nu, double z);
double bessel_y(double nu, double z);

/// H^(1)_nu(z). Each call verifies the Wronskian
/// J_{nu+1} Y_nu - J_nu Y_{nu+1} = 2/(pi z) and throws a numerical error when
/// the relative residual exceeds 1e-8.
std::complex<double> hankel_h1(double nu, double z);

/// |(J_{nu+1} Y_nu - J_nu Y_{nu+1}) pi z / 2 - 1|
double wronskian_residual(double nu, double z);

}  // namespace itkit::special
