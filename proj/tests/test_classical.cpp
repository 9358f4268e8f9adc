#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "itkit/classical.hpp"
#include "itkit/error.hpp"

using namespace itkit;
using namespace itkit::classical;

namespace {

Vec v1(double x) { return Vec::Constant(1, x); }
Vec v3(double x, double y, double z) { return (Vec(3) << x, y, z).finished(); }

template <class F>
double central(F f, double x) {
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("principal function S") {
  CHECK(action_S_free(v1(2), v1(0), 1, 1) == doctest::Approx(2.0));
  CHECK(action_S_free(v1(1.5), v1(1.5), 3, 2) == 0.0);
  CHECK(action_S_free(v1(1), v1(0), 2, 2) == doctest::Approx(0.5));
  CHECK_THROWS_AS(action_S_free(v1(1), v1(0), 0, 1), Error);

  CHECK(action_S_tilde_free(v1(0), v1(1), 2, 1) == doctest::Approx(-1.0));
  CHECK(action_S_tilde_free(v1(3), v1(1), 0, 1) == doctest::Approx(3.0));

  CHECK(action_S_uniform(v1(1), v1(0), 1, 1, v1(1)) == doctest::Approx(0.5 + 0.5 - 1.0 / 24));
  CHECK(action_S_uniform(v3(1, 2, 3), v3(0, 1, 0), 2, 1.5, Vec::Zero(3)) ==
        doctest::Approx(action_S_free(v3(1, 2, 3), v3(0, 1, 0), 2, 1.5)));
}

TEST_CASE("dS/dT = -E and -dS/dr' = p' in a uniform field") {
  const double m = 1.3;
  const Vec F = v3(0.2, -0.1, 0.05);
  const Vec rs = v3(0.1, 0.4, -0.2);
  const Vec r = v3(2, -1, 0.5);
  const double T = 1.7;
  const Vec p = stationary_momentum(r, rs, T, m, F);
  const Trajectory tr = Trajectory::launch(rs, p, 0, T, m, UniformField(F));
  const double dSdT = central([&](double t) { return action_S_uniform(r, rs, t, m, F); }, T);
  CHECK(dSdT == doctest::Approx(-tr.energy()).epsilon(1e-8));
  for (int a = 0; a < 3; ++a) {
    auto S = [&](double x) {
      Vec q = rs;
      q[a] = x;
      return action_S_uniform(r, q, T, m, F);
    };
    CHECK(-central(S, rs[a]) == doctest::Approx(p[a]).epsilon(1e-6));
  }
}

TEST_CASE("stationary momentum") {
  CHECK(stationary_momentum(v1(5), v1(0), 2, 1)[0] == doctest::Approx(2.5));
  CHECK(stationary_momentum(v1(1), v1(0), 1, 1, v1(1))[0] == doctest::Approx(0.5));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 50; ++k) {
    const Vec rs = v3(u(rng), u(rng), u(rng)), r = v3(u(rng), u(rng), u(rng)), F = 0.3 * v3(u(rng), u(rng), u(rng));
    const double T = 0.5 + std::abs(u(rng)), m = 0.5 + std::abs(u(rng));
    const Trajectory tr = Trajectory::launch(rs, stationary_momentum(r, rs, T, m, F), 0, T, m, UniformField(F));
    CHECK((tr.r_end - r).norm() < 1e-12 * (1 + r.norm()));
    CHECK(tr.equation_of_motion_residual() < 1e-12);
  }
}

TEST_CASE("van Vleck factors") {
  CHECK(van_vleck_time(1, 2, 3) == doctest::Approx(0.125));
  CHECK(van_vleck_time(1, 2, 1) == doctest::Approx(0.5));
  const std::vector<double> ms{1, 1}, ts{2, 4};
  CHECK(van_vleck_time(ms, ts, 3) == doctest::Approx(1.953125e-3));
  CHECK_THROWS_AS(van_vleck_time(1, -1, 3), Error);

  CHECK(van_vleck_numeric(TrajectoryBundle::fixed_time(v1(0), v1(1), 2, 1, v1(0)), 1e-4) ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(van_vleck_numeric(TrajectoryBundle::fixed_time(v1(0), v1(1), 2, 1, v1(1)), 1e-4) ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(van_vleck_numeric(TrajectoryBundle::fixed_time(v3(0, 0, 0), v3(1, 0, 0.5), 2, 1, v3(0.1, 0, 0)), 1e-4) ==
        doctest::Approx(0.125).epsilon(1e-6));

  // Fold: two launch momenta land on the same point near p = 1.
  TrajectoryBundle fold;
  fold.p_center = v1(1.0);
  fold.endpoint = [](const Vec& p) { return v1((p[0] - 1.0) * (p[0] - 1.0)); };
  try {
    van_vleck_numeric(fold, 1e-4);
    FAIL("expected caustic");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Caustic);
  }
}

TEST_CASE("characteristic function and time of flight") {
  CHECK(characteristic_action_W_free(v3(3, 0, 0), v3(0, 0, 0), 0.5, 1) == doctest::Approx(3.0));
  const TimeOfFlight a = time_of_flight_free(v3(3, 0, 0), v3(0, 0, 0), 0.5, 1);
  CHECK(a.T == doctest::Approx(3.0));
  CHECK(a.dT_dE == doctest::Approx(-3.0));
  const TimeOfFlight b = time_of_flight_free(v1(1), v1(0), 2, 1);
  CHECK(b.T == doctest::Approx(0.5));
  CHECK(b.dT_dE == doctest::Approx(-0.125));
  CHECK_THROWS_AS(time_of_flight_free(v1(1), v1(1), 2, 1), Error);
  CHECK_THROWS_AS(characteristic_action_W_free(v1(1), v1(0), 0, 1), Error);

  const Vec r = v3(1, 2, -2), rs = v3(0.5, -0.5, 0);
  const double E = 0.8, m = 1.7;
  const double p = std::sqrt(2 * m * E);
  const Vec Rhat = (r - rs).normalized();
  for (int k = 0; k < 3; ++k) {
    auto Wr = [&](double x) {
      Vec q = r;
      q[k] = x;
      return characteristic_action_W_free(q, rs, E, m);
    };
    auto Wrs = [&](double x) {
      Vec q = rs;
      q[k] = x;
      return characteristic_action_W_free(r, q, E, m);
    };
    CHECK(central(Wr, r[k]) == doctest::Approx(p * Rhat[k]).epsilon(1e-6));
    CHECK(-central(Wrs, rs[k]) == doctest::Approx(p * Rhat[k]).epsilon(1e-6));
  }
  CHECK(central([&](double e) { return characteristic_action_W_free(r, rs, e, m); }, E) ==
        doctest::Approx(time_of_flight_free(r, rs, E, m).T).epsilon(1e-8));
}

TEST_CASE("energy density D") {
  CHECK(density_D_free(v3(2, 0, 0), v3(0, 0, 0), 1) == doctest::Approx(0.25));
  CHECK_THROWS_AS(density_D_free(v1(2), v1(2), 1), Error);
  const Vec r = v3(3, -1, 2), rs = v3(0, 0, 0.5);
  const double E = 1.3, m = 2.0;
  const DensityFactors f = density_factors_free(r, rs, E, m);
  CHECK(f.D == doctest::Approx(density_D_free(r, rs, m)).epsilon(1e-8));
  CHECK(f.D == doctest::Approx(-f.dT_dE * f.C).epsilon(1e-14));
  const double R = (r - rs).norm();
  const double p = std::sqrt(2 * m * E);
  CHECK(density_D_berry(m, p, p, 1.0 / (R * R)) == doctest::Approx(f.D).epsilon(1e-12));
}

TEST_CASE("Legendre relations") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const Vec rs = v3(u(rng), u(rng), u(rng)), r = v3(u(rng), u(rng), u(rng)) * 3;
    const Vec F = 0.2 * v3(u(rng), u(rng), u(rng));
    const double T = 1 + std::abs(u(rng)), m = 0.5 + std::abs(u(rng));
    const Vec p = stationary_momentum(r, rs, T, m, F);
    const double S = action_S_uniform(r, rs, T, m, F);
    CHECK(action_S_tilde_uniform(r, p, T, m, F) - p.dot(rs) == doctest::Approx(S).epsilon(1e-10));
    const Trajectory tr = Trajectory::launch(rs, p, 0, T, m, UniformField(F));
    CHECK(tr.action_S() + tr.energy() * T == doctest::Approx(tr.action_W()).epsilon(1e-10));
  }
}

TEST_CASE("uniform-field branches in 1-D") {
  SUBCASE("free limit") {
    const auto t = enumerate_trajectories_uniform_1d(0, 1, 0.5, 1, 0);
    REQUIRE(t.size() == 1);
    CHECK(t[0].p_start[0] == doctest::Approx(1.0));
  }
  SUBCASE("direct and reflected") {
    const double F = 0.1, E = 0.5, m = 1;
    const auto t = enumerate_trajectories_uniform_1d(0, 2, E, m, F);
    REQUIRE(t.size() == 2);
    CHECK(t[0].p_start[0] > 0);
    CHECK(t[1].p_start[0] < 0);
    CHECK(t[0].duration() < t[1].duration());
    for (const auto& tr : t) {
      CHECK(tr.equation_of_motion_residual() < 1e-12);
      CHECK(tr.r_end[0] == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(tr.energy() == doctest::Approx(E).epsilon(1e-10));
      const double e_end = tr.p_end.squaredNorm() / (2 * m) - F * tr.r_end[0];
      CHECK(e_end == doctest::Approx(E).epsilon(1e-10));
    }
  }
  SUBCASE("forbidden") {
    CHECK(enumerate_trajectories_uniform_1d(0, -10, 0.5, 1, 0.1).empty());
    CHECK_THROWS_AS(action_W_uniform_1d(-10, 0, 0.5, 1, 0.1, 0), Error);
  }
  SUBCASE("W gradients on both branches") {
    const double rs = 0.3, r = 4, E = 0.6, m = 1.2, F = 0.05;
    for (std::size_t br : {0u, 1u}) {
      const auto tr = enumerate_trajectories_uniform_1d(rs, r, E, m, F).at(br);
      auto W = [&](double x, double y, double e) { return action_W_uniform_1d(x, y, e, m, F, br); };
      CHECK(central([&](double x) { return W(x, rs, E); }, r) == doctest::Approx(tr.p_end[0]).epsilon(1e-6));
      CHECK(-central([&](double y) { return W(r, y, E); }, rs) == doctest::Approx(tr.p_start[0]).epsilon(1e-6));
      CHECK(central([&](double e) { return W(r, rs, e); }, E) == doctest::Approx(tr.duration()).epsilon(1e-6));
    }
  }
}

TEST_CASE("trajectory csv") {
  const std::vector<Trajectory> t = enumerate_trajectories_uniform_1d(0, 2, 0.5, 1, 0.1);
  std::stringstream ss;
  write_trajectories_csv(ss, t);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "r_start,p_start,t_start,r_end,p_end,t_end,S,W,T");
  int rows = 0;
  for (std::string line; std::getline(ss, line);) ++rows;
  CHECK(rows == 2);
}
