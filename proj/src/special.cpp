#include "itkit/special.hpp"

#include <cmath>
#include <sstream>

#include "itkit/error.hpp"
#include "itkit/units.hpp"

namespace itkit::special {

namespace {

using ld = long double;

constexpr ld kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr ld kPiL = 3.141592653589793238462643383279502884L;

bool is_integer(double nu) { return nu == std::floor(nu); }

void check_args(double nu, double z, const char* what) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    std::ostringstream os;
    os << what << ": argument must be positive and finite (z = " << z << ")";
    fail(ErrorKind::Domain, os.str());
  }
  if (!supported_order(nu)) {
    std::ostringstream os;
    os << what << ": order " << nu << " is not a non-negative integer or half-integer";
    fail(ErrorKind::Domain, os.str());
  }
}

// sum_k (-1)^k (z/2)^(2k+nu) / (k! Gamma(k+nu+1)); nu may be a negative half-integer.
ld j_series(ld nu, ld z) {
  const ld h = z / 2.0L;
  ld term = std::pow(h, nu) / std::tgamma(nu + 1.0L);
  ld sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -h * h / (static_cast<ld>(k) * (static_cast<ld>(k) + nu));
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum) && static_cast<ld>(k) > h) break;
  }
  return sum;
}

// Integer order Y_n from the ascending series with digamma coefficients.
ld y_series_integer(int n, ld z) {
  const ld h = z / 2.0L;
  ld finite = 0.0L;
  {
    ld fact_nk1 = 1.0L;  // (n-k-1)!
    for (int j = 2; j <= n - 1; ++j) fact_nk1 *= j;
    ld fact_k = 1.0L;
    for (int k = 0; k < n; ++k) {
      finite += fact_nk1 / fact_k * std::pow(h, 2 * k - n);
      if (k + 1 < n) {
        fact_nk1 /= static_cast<ld>(n - k - 1);
        fact_k *= static_cast<ld>(k + 1);
      }
    }
  }
  ld harmonic_k = 0.0L;   // H_k
  ld harmonic_nk = 0.0L;  // H_{n+k}
  for (int j = 1; j <= n; ++j) harmonic_nk += 1.0L / j;
  ld nfact = 1.0L;
  for (int j = 2; j <= n; ++j) nfact *= j;
  ld term = std::pow(h, n) / nfact;  // (-1)^k (z/2)^(2k+n) / (k! (n+k)!)
  ld tail = (-2.0L * kEulerGamma + harmonic_k + harmonic_nk) * term;
  for (int k = 1; k < 500; ++k) {
    term *= -h * h / (static_cast<ld>(k) * static_cast<ld>(n + k));
    harmonic_k += 1.0L / k;
    harmonic_nk += 1.0L / (n + k);
    const ld contrib = (-2.0L * kEulerGamma + harmonic_k + harmonic_nk) * term;
    tail += contrib;
    if (std::fabs(contrib) < 1e-21L * std::fabs(tail) && static_cast<ld>(k) > h) break;
  }
  const ld jn = j_series(static_cast<ld>(n), z);
  return (2.0L / kPiL) * jn * std::log(h) - finite / kPiL - tail / kPiL;
}

// Hankel's expansion sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)} sum_k i^k a_k(nu) / z^k,
// truncated at the smallest term past k ~ nu (exact for half-integer orders).
std::complex<double> h1_asymptotic(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  std::complex<double> sum(1.0, 0.0);
  std::complex<double> term(1.0, 0.0);
  const std::complex<double> I(0.0, 1.0);
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= I * (mu - odd * odd) / (8.0 * k * z);
    const double mag = std::abs(term);
    if (mag == 0.0) break;
    if (k > nu + 1.0 && mag > last) break;  // divergent tail of the expansion
    sum += term;
    last = mag;
    if (mag < 1e-18 * std::abs(sum)) break;
  }
  const double phase = z - nu * kPi / 2.0 - kPi / 4.0;
  return std::sqrt(2.0 / (kPi * z)) * std::polar(1.0, phase) * sum;
}

double j_raw(double nu, double z) {
  if (z < kSeriesLimit) return static_cast<double>(j_series(nu, z));
  return h1_asymptotic(nu, z).real();
}

double y_raw(double nu, double z) {
  if (z >= kSeriesLimit) return h1_asymptotic(nu, z).imag();
  if (is_integer(nu)) return static_cast<double>(y_series_integer(static_cast<int>(nu), z));
  // Y_{n+1/2} = (-1)^(n+1) J_{-n-1/2}
  const int n = static_cast<int>(std::floor(nu));
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  return sign * static_cast<double>(j_series(-static_cast<ld>(nu), z));
}

}  // namespace

bool supported_order(double nu) { return nu >= 0.0 && std::isfinite(nu) && is_integer(2.0 * nu); }

double bessel_j(double nu, double z) {
  check_args(nu, z, "bessel_j");
  return j_raw(nu, z);
}

double bessel_y(double nu, double z) {
  check_args(nu, z, "bessel_y");
  return y_raw(nu, z);
}

double wronskian_residual(double nu, double z) {
  check_args(nu, z, "wronskian_residual");
  const double w = j_raw(nu + 1.0, z) * y_raw(nu, z) - j_raw(nu, z) * y_raw(nu + 1.0, z);
  return std::abs(w * kPi * z / 2.0 - 1.0);
}

std::complex<double> hankel_h1(double nu, double z) {
  check_args(nu, z, "hankel_h1");
  const double res = wronskian_residual(nu, z);
  if (!(res < 1e-8)) {
    std::ostringstream os;
    os << "hankel_h1: Wronskian self-check failed at nu = " << nu << ", z = " << z << " (residual " << res << ")";
    fail(ErrorKind::Numerical, os.str());
  }
  if (z >= kSeriesLimit) return h1_asymptotic(nu, z);
  return {j_raw(nu, z), y_raw(nu, z)};
}

}  // namespace itkit::special
