#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "itkit/classical.hpp"
#include "itkit/error.hpp"
#include "itkit/scatter.hpp"
#include "itkit/special.hpp"
#include "itkit/units.hpp"

using namespace itkit;
using namespace itkit::scatter;

namespace {

Vec v3(double x, double y, double z) { return (Vec(3) << x, y, z).finished(); }

std::vector<double> gaussian_potential(const Grid& g, double V0, double a) {
  std::vector<double> V(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) V[i] = V0 * std::exp(-g.point(i).squaredNorm() / (a * a));
  return V;
}

// Hyper vector with the whole separation on particle 1 along x.
Vec hyper_at(int N, double X) {
  Vec R = Vec::Zero(3 * N);
  R[0] = X;
  return R;
}

}  // namespace

TEST_CASE("free Green function") {
  const Vec o = Vec::Zero(3);
  CHECK(std::abs(green_free(v3(1, 0, 0), o, 0.5, 1)) == doctest::Approx(0.1591549431).epsilon(1e-9));
  const cplx g1 = green_free(v3(1, 0, 0), o, 0.5, 1), g2 = green_free(v3(1.3, 0, 0), o, 0.5, 1);
  CHECK(std::arg(g2 / g1) == doctest::Approx(0.3));
  try {
    green_free(o, o, 0.5, 1);
    FAIL("expected singularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singularity);
  }
  // Helmholtz equation by a 7-point Laplacian
  const double E = 0.7, m = 1.2, k2 = 2 * m * E, h = 1e-3;
  const Vec r = v3(1.1, -0.7, 0.4);
  cplx lap = -6.0 * green_free(r, o, E, m);
  for (int a = 0; a < 3; ++a) {
    Vec e = Vec::Zero(3);
    e[a] = h;
    lap += green_free(r + e, o, E, m) + green_free(r - e, o, E, m);
  }
  lap /= h * h;
  CHECK(std::abs(lap + k2 * green_free(r, o, E, m)) < 1e-4 * std::abs(k2 * green_free(r, o, E, m)));
}

TEST_CASE("semiclassical Green function is exact for free motion") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 20);
  const Vec o = Vec::Zero(3);
  for (int k = 0; k < 50; ++k) {
    const double R = u(rng), E = u(rng) / 10, m = 1.0;
    const Vec r = v3(R, 0, 0);
    const cplx sc =
        green_semiclassical(classical::characteristic_action_W_free(r, o, E, m), classical::density_D_free(r, o, m));
    const cplx ex = green_free(r, o, E, m);
    CHECK(std::abs(sc - ex) < 1e-12 * std::abs(ex));
  }
  CHECK(std::abs(green_semiclassical(1.0, 1.0) + std::exp(cplx(0, 1)) / kTwoPi) < 1e-15);
  CHECK(std::abs(green_semiclassical(0.3, 4.0)) == doctest::Approx(2 * std::abs(green_semiclassical(0.3, 1.0))));
  CHECK_THROWS_AS(green_semiclassical(1.0, 0.0), Error);
}

TEST_CASE("time-independent IT and |f|^2") {
  CHECK(vv_time_independent(1, 1e3) == doctest::Approx(1e-9));
  CHECK(ti_it_density(0.5, 1e-9) == doctest::Approx(5e-10));
  CHECK(vv_time_independent(1, 2e3) == doctest::Approx(vv_time_independent(1, 1e3) / 8));
  CHECK(amplitude_from_momentum_wfn(0.0, 1, 1, -1) == 0.0);
  CHECK_THROWS_AS(amplitude_from_momentum_wfn(0.5, 1, 1, 0.0), Error);

  const Vec r = v3(0, 3e3, 4e3), o = Vec::Zero(3);
  const double E = 0.8, m = 1.5, phi2 = 0.37;
  const double p = std::sqrt(2 * m * E), R = r.norm();
  const classical::TimeOfFlight tof = classical::time_of_flight_free(r, o, E, m);
  const double f2 = amplitude_from_momentum_wfn(phi2, E, m, tof.dT_dE);
  CHECK(f2 / (R * R) == doctest::Approx(ti_it_density(phi2, vv_time_independent(p, R))).epsilon(1e-10));
  // C |Phi|^2 = D |f|^2 / m^2
  const classical::DensityFactors df = classical::density_factors_free(r, o, E, m);
  CHECK(df.C * phi2 == doctest::Approx(df.D * f2 / (m * m)).epsilon(1e-8));
}

TEST_CASE("Born amplitude of a Gaussian") {
  const double V0 = 0.01, a = 1.0, m = 1.0;
  const Grid g = Grid::centered(3, 48, 0.25);
  const auto V = gaussian_potential(g, V0, a);
  const Vec pin = v3(0, 0, 1);
  const AmplitudeEval f0 = born_amplitude(g, V, pin, pin, m);
  const double analytic = -m * V0 * a * a * a * std::sqrt(kPi) / 2;
  CHECK(analytic == doctest::Approx(-0.0088623).epsilon(1e-5));
  CHECK(f0.f.real() == doctest::Approx(analytic).epsilon(1e-6));
  CHECK(std::abs(f0.f.imag()) < 1e-15);
  CHECK(cross_section(f0) == doctest::Approx(7.8540e-5).epsilon(1e-4));
  CHECK(std::abs(born_amplitude(g, V, pin, pin, m, Exec::Serial).f - f0.f) < 1e-15);

  double last = std::abs(f0.f);
  for (double th : {0.3, 0.8, 1.5, 3.0}) {
    const Vec pout = v3(std::sin(th), 0, std::cos(th));
    const AmplitudeEval f = born_amplitude(g, V, pin, pout, m);
    const double q = (pin - pout).norm();
    CHECK(f.f.real() == doctest::Approx(analytic * std::exp(-q * q * a * a / 4)).epsilon(1e-6));
    CHECK(std::abs(f.f) < last);
    last = std::abs(f.f);
  }

  const std::vector<double> zero(g.size(), 0.0);
  CHECK(born_amplitude(g, zero, pin, pin, m).f == cplx{});
  CHECK_THROWS_AS(born_amplitude(g, V, pin, v3(0, 0, 1.1), m), Error);
  const auto wide = gaussian_potential(g, V0, 5.0);
  try {
    born_amplitude(g, wide, pin, pin, m);
    FAIL("expected coverage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Coverage);
  }
}

TEST_CASE("cross sections and detection") {
  const cplx f(-0.0088623, 0);
  CHECK(cross_section(f) == doctest::Approx(7.854e-5).epsilon(1e-4));
  CHECK(cross_section(cplx{}) == 0.0);
  CHECK(cross_section(f * std::polar(1.0, 1.234)) == doctest::Approx(cross_section(f)).epsilon(1e-15));
  const double dP = detection_probability_ti(std::sqrt(7.85e-5), 2.48e-4, 1, 1, 1, 1e-3);
  CHECK(dP == doctest::Approx(1.948e-11).epsilon(1e-3));
  CHECK(dP / (2.48e-4 * 1e-3) == doctest::Approx(7.85e-5));
  CHECK(detection_probability_ti(f, 0.0, 1, 1, 1, 1e-3) == 0.0);
}

TEST_CASE("hyperspherical configuration") {
  const std::vector<double> m{1, 1};
  const std::vector<Vec> pos{v3(1, 0, 0), v3(0, 1, 0)};
  const HyperConfig c = hyper_config(m, pos, 1.0, 0.5);
  CHECK(c.hyperradius == doctest::Approx(std::sqrt(2.0)));
  CHECK(c.eta == 1.0);
  CHECK(c.alpha == 2.0);
  CHECK(c.hypermomentum == doctest::Approx(1.0));
  const std::vector<double> m1{1.7};
  const std::vector<Vec> pos1{v3(0, 3, 4)};
  const HyperConfig c1 = hyper_config(m1, pos1, 1.7, 0.5);
  CHECK(c1.hyperradius == doctest::Approx(5.0));
  CHECK(c1.alpha == 0.5);

  // mass-weighted distances
  const std::vector<double> mm{1.0, 3.0, 0.5};
  const std::vector<Vec> a{v3(1, 2, 3), v3(-1, 0, 2), v3(0, 0, 1)}, b{v3(0, 1, 0), v3(2, 2, 2), v3(1, -1, 0)};
  const double mu = 0.7;
  double lhs = 0;
  for (int n = 0; n < 3; ++n) lhs += mm[n] * (a[n] - b[n]).squaredNorm();
  CHECK(lhs == doctest::Approx(mu * (hyper_vector(mm, a, mu) - hyper_vector(mm, b, mu)).squaredNorm()));

  const std::vector<Vec> R{v3(1, 0, 0), v3(0, 1, 0)};
  const HyperConfig cc = hyper_config(m, pos, 1.0, 1.0);
  CHECK(characteristic_time_N(cc, R, 1.0) == doctest::Approx(1.0));
  const std::vector<Vec> R1{v3(0, 0, 2.5)};
  CHECK(characteristic_time_N(c1, R1, 0.5) ==
        doctest::Approx(classical::time_of_flight_free(R1[0], Vec::Zero(3), 0.5, 1.7).T));
}

TEST_CASE("hyper action, trajectory densities") {
  const std::vector<double> m{1.0, 2.0};
  const std::vector<Vec> pos{Vec::Zero(3), Vec::Zero(3)};
  const double E = 0.9, mu = 1.3;
  const HyperConfig c = hyper_config(m, pos, mu, E);
  Vec R(6), Rs(6);
  R << 3, 1, -2, 0.5, 4, 1;
  Rs << 0.2, 0, 0.1, -0.3, 0, 0.4;
  const double X = (R - Rs).norm();
  CHECK(hyper_action(c, R, Rs) == doctest::Approx(c.hypermomentum * X));

  // -dW/dR' has magnitude P'
  Vec grad(6);
  for (int k = 0; k < 6; ++k) {
    Vec a = Rs, b = Rs;
    a[k] += 1e-6;
    b[k] -= 1e-6;
    grad[k] = -(hyper_action(c, R, a) - hyper_action(c, R, b)) / 2e-6;
  }
  CHECK(grad.norm() == doctest::Approx(c.hypermomentum).epsilon(1e-6));

  // dW/dE = T with T from the physical displacements
  auto W_of_E = [&](double e) { return hyper_action(hyper_config(m, pos, mu, e), R, Rs); };
  const double h = 1e-5 * E;
  std::vector<Vec> disp(2);
  for (int n = 0; n < 2; ++n) disp[n] = (R - Rs).segment(3 * n, 3) / std::sqrt(m[n] / mu);
  CHECK((W_of_E(E + h) - W_of_E(E - h)) / (2 * h) == doctest::Approx(characteristic_time_N(c, disp, E)).epsilon(1e-6));

  // D = -(dT/dE) (dp'/dr), with T = mu X / P'
  const double T = mu * X / c.hypermomentum;
  CHECK(vv_hyper(c, X) == doctest::Approx(vv_hyper_time(c, T)).epsilon(1e-12));
  auto T_of_E = [&](double e) { return mu * X / std::sqrt(2 * mu * e); };
  const double dTdE = (T_of_E(E + h) - T_of_E(E - h)) / (2 * h);
  CHECK(dTdE == doctest::Approx(dT_dE_hyper(c, X)).epsilon(1e-8));
  CHECK(density_D_N(c, X) == doctest::Approx(-dTdE * vv_hyper(c, X)).epsilon(1e-8));

  // examples
  const std::vector<double> m11{1, 1};
  const HyperConfig u = hyper_config(m11, pos, 1.0, 0.5);
  CHECK(vv_hyper_time(u, 2.0) == doctest::Approx(0.015625));
  CHECK(vv_hyper_time(u, 2.0) == doctest::Approx(classical::van_vleck_time(1, 2, 3) * classical::van_vleck_time(1, 2, 3)));
  CHECK(density_D_N(u, 10.0) == doctest::Approx(1e-5));
  const std::vector<double> one{1.0};
  const std::vector<Vec> p1{Vec::Zero(3)};
  CHECK(density_D_N(hyper_config(one, p1, 1.0, 0.5), 2.0) == doctest::Approx(0.25));
  CHECK(vv_hyper(hyper_config(one, p1, 1.0, 0.5), 2.0) == doctest::Approx(vv_time_independent(1.0, 2.0)));
  CHECK_THROWS_AS(density_D_N(u, 0.0), Error);
}

TEST_CASE("hyperspherical Green functions") {
  const std::vector<double> one{1.0};
  const std::vector<Vec> p1{Vec::Zero(3)};
  const Vec o3 = Vec::Zero(3);
  SUBCASE("N = 1 reduces to the free Green function") {
    for (double E : {0.5, 0.1, 2.0})
      for (double X : {0.5, 1.0, 7.0, 300.0}) {
        const HyperConfig c = hyper_config(one, p1, 1.0, E);
        const cplx ex = green_free(hyper_at(1, X), o3, E, 1.0);
        CHECK(std::abs(green_hyper_asymptotic(c, hyper_at(1, X), o3) - ex) < 1e-12 * std::abs(ex));
        CHECK(std::abs(green_hyper_hankel(c, hyper_at(1, X), o3) - ex) < 1e-10 * std::abs(ex));
      }
  }
  SUBCASE("N = 2 radial law and Hankel limit") {
    const std::vector<double> m{1, 1};
    const std::vector<Vec> pos{o3, o3};
    const HyperConfig c = hyper_config(m, pos, 1.0, 0.5);
    const Vec O = Vec::Zero(6);
    const double r1 = std::abs(green_hyper_asymptotic(c, hyper_at(2, 100), O));
    const double r2 = std::abs(green_hyper_asymptotic(c, hyper_at(2, 400), O));
    CHECK(r1 / r2 == doctest::Approx(std::pow(4.0, 2.5)));
    double last = INFINITY;
    for (double z : {100.0, 200.0, 500.0, 1e3, 3e3, 1e4}) {
      const cplx a = green_hyper_asymptotic(c, hyper_at(2, z), O), h = green_hyper_hankel(c, hyper_at(2, z), O);
      const double rel = std::abs(a - h) / std::abs(h);
      CHECK(rel < last);
      last = rel;
    }
    CHECK(last < 1e-3);
    try {
      green_hyper_hankel(c, O, O);
      FAIL("expected singularity");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Singularity);
    }
  }
}

TEST_CASE("N-particle amplitudes") {
  const std::vector<double> one{1.3};
  const std::vector<Vec> p1{Vec::Zero(3)};
  const HyperConfig c1 = hyper_config(one, p1, 1.3, 0.5);
  CHECK(std::abs(n_particle_amplitude(1.0, c1) + std::sqrt(kTwoPi) * 1.3) < 1e-14);
  CHECK(n_particle_amplitude(0.0, c1) == cplx{});

  // |f|^2 from a matrix element vs the momentum-wavefunction form (N = 2)
  const std::vector<double> m{1.0, 2.0};
  const std::vector<Vec> pos{Vec::Zero(3), Vec::Zero(3)};
  const HyperConfig c = hyper_config(m, pos, 1.0, 0.7);
  const double X = 50.0, phi2 = 0.02;
  const double f2 = f_squared_from_momentum_wfn_N(c, X, phi2);
  CHECK(f2 == doctest::Approx(std::pow(c.hypermomentum, 3) * c.mu * c.mu * phi2 / std::abs(dT_dE_hyper(c, X))));
  // |Psi|^2 = D |f|^2 / mu^2 / P'^(3(N-1)) = vv |Phi|^2
  CHECK(density_D_N(c, X) * f2 / (c.mu * c.mu * std::pow(c.hypermomentum, 3)) ==
        doctest::Approx(vv_hyper(c, X) * phi2).epsilon(1e-12));
}

TEST_CASE("observables do not depend on mu") {
  const std::vector<double> m{1.0, 1.8};
  const std::vector<Vec> pos{v3(1e3, 2e2, 0), v3(-3e2, 4e2, 1e2)}, start{v3(0.2, 0, 0), v3(0, -0.1, 0.3)};
  const double E = 0.6;
  std::vector<double> G, D, V, F;
  for (double mu : {0.5, 1.0, 2.0}) {
    const HyperConfig c = hyper_config(m, pos, mu, E);
    const Vec R = hyper_vector(m, pos, mu), Rs = hyper_vector(m, start, mu);
    const double X = (R - Rs).norm();
    G.push_back(std::abs(green_hyper_hankel(c, R, Rs)));
    G.push_back(std::abs(green_hyper_asymptotic(c, R, Rs)));
    D.push_back(density_D_N(c, X));
    V.push_back(vv_hyper(c, X));
    // raw |f|^2 carries mu^((3N+1)/2) at fixed |Phi|^2; the reduced value does not
    const cplx f = std::sqrt(f_squared_from_momentum_wfn_N(c, X, 0.013));
    F.push_back(f_squared_reduced(f, c));
  }
  for (std::size_t k = 2; k < G.size(); ++k) CHECK(G[k] == doctest::Approx(G[k - 2]).epsilon(1e-10));
  for (auto* v : {&D, &V, &F})
    for (std::size_t k = 1; k < v->size(); ++k) CHECK((*v)[k] == doctest::Approx((*v)[0]).epsilon(1e-10));
}

TEST_CASE("green csv") {
  std::vector<GreenEval> rows{{v3(2, 0, 0), Vec::Zero(3), 0.5, cplx(1, 2), GreenForm::HyperHankel}};
  std::stringstream ss;
  write_green_csv(ss, rows);
  std::string h, r;
  std::getline(ss, h);
  std::getline(ss, r);
  CHECK(h == "R,E,re,im,form");
  CHECK(r == "2,0.5,1,2,hyper-hankel");
}
