#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "itkit/error.hpp"
#include "itkit/special.hpp"
#include "itkit/units.hpp"

using namespace itkit;
using namespace itkit::special;
using cplx = std::complex<double>;

TEST_CASE("half-integer closed forms") {
  const cplx i(0, 1);
  for (double z : {0.3, 1.0, kPi, 7.5, 19.99, 20.0, 42.0, 1e3}) {
    const cplx h12 = -i * std::sqrt(2 / (kPi * z)) * std::exp(i * z);
    CHECK(std::abs(hankel_h1(0.5, z) - h12) < 1e-10 * std::abs(h12));
    const cplx h32 = -std::sqrt(2 / (kPi * z)) * std::exp(i * z) * (1.0 + i / z);
    CHECK(std::abs(hankel_h1(1.5, z) - h32) < 1e-10 * std::abs(h32));
  }
  const cplx at_pi = hankel_h1(0.5, kPi);
  CHECK(std::abs(at_pi - i * std::sqrt(2.0) / kPi) < 1e-14);
}

TEST_CASE("integer orders") {
  CHECK(bessel_j(2, 1) == doctest::Approx(0.1149034849).epsilon(1e-9));
  CHECK(bessel_y(2, 1) == doctest::Approx(-1.6506826068).epsilon(1e-9));
  CHECK(bessel_j(0, 2.404825557695773) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("agreement with the standard library") {
  double worst = 0;
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.5, 7.0})
    for (double z : {0.01, 0.5, 1.0, 5.0, 10.0, 19.9, 20.0, 20.1, 35.0, 50.0, 100.0, 1000.0}) {
      const double j = std::cyl_bessel_j(nu, z), y = std::cyl_neumann(nu, z);
      const double scale = std::abs(j) + std::abs(y);
      worst = std::max(worst, (std::abs(bessel_j(nu, z) - j) + std::abs(bessel_y(nu, z) - y)) / scale);
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("Wronskian") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.5, 8.0})
    for (double z : {0.5, 1.0, 5.0, 50.0}) CHECK(wronskian_residual(nu, z) < 1e-10);
}

TEST_CASE("large argument") {
  for (double nu : {0.5, 2.0, 3.5}) CHECK(std::abs(hankel_h1(nu, 1e3)) * std::sqrt(kPi * 1e3 / 2) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("domain") {
  CHECK(supported_order(2.5));
  CHECK_FALSE(supported_order(0.3));
  CHECK_FALSE(supported_order(-1));
  for (double z : {0.0, -1.0})
    try {
      hankel_h1(1, z);
      FAIL("expected domain error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Domain);
    }
  CHECK_THROWS_AS(bessel_j(0.3, 1.0), Error);
}
