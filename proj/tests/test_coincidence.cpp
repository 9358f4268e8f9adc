#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "itkit/coincidence.hpp"
#include "itkit/error.hpp"
#include "itkit/units.hpp"

using namespace itkit;
using namespace itkit::coincidence;

namespace {

Vec v3(double x, double y, double z) { return (Vec(3) << x, y, z).finished(); }

// Arrival time of particle 1 by bisection: E(T1) = sum m_n r_n^2 / (2 (T1 + DT_n)^2) falls monotonically.
std::vector<double> bisect_momenta(const std::vector<double>& m, const std::vector<double>& r, double E,
                                   const std::vector<double>& dt) {
  auto times = [&](double T1) {
    std::vector<double> t{T1};
    for (double d : dt) t.push_back(T1 + d);
    return t;
  };
  auto energy = [&](double T1) {
    double e = 0;
    const auto t = times(T1);
    for (std::size_t n = 0; n < m.size(); ++n) e += m[n] * r[n] * r[n] / (2 * t[n] * t[n]);
    return e;
  };
  double lo = 0;
  for (double d : dt) lo = std::max(lo, -d);
  double hi = lo + 1;
  while (energy(hi) > E) hi = lo + 2 * (hi - lo);
  for (int k = 0; k < 400 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (energy(mid) > E ? lo : hi) = mid;
  }
  const auto t = times(0.5 * (lo + hi));
  std::vector<double> p;
  for (std::size_t n = 0; n < m.size(); ++n) p.push_back(m[n] * r[n] / t[n]);
  return p;
}

std::vector<double> tau_grid(double t, double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(t * (lo + (hi - lo) * i / (n - 1)));
  return v;
}

}  // namespace

TEST_CASE("characteristic time") {
  CHECK(characteristic_time(1, 1, 1) == 1.0);
  const double t = characteristic_time(1, UnitSystem::from_cm(2), UnitSystem::from_ev(0.37));
  CHECK(t == doctest::Approx(3.2412e9).epsilon(1e-4));
  CHECK(characteristic_time(1, 2 * UnitSystem::from_cm(2), UnitSystem::from_ev(0.37)) == doctest::Approx(2 * t));
  CHECK_THROWS_AS(characteristic_time(1, -1, 1), Error);
}

TEST_CASE("pair inversion") {
  SUBCASE("tau = 1 against bisection") {
    const PairMomenta pm = invert_delays_pair(1.0, 1.0, 1.0);
    const auto ref = bisect_momenta({1, 1}, {1, 1}, 1.0, {1.0});
    // oracle values: p1 = 1.2966302629, p2 = 0.5645794553
    CHECK(pm.p1 == doctest::Approx(ref[0]).epsilon(1e-12));
    CHECK(pm.p2 == doctest::Approx(ref[1]).epsilon(1e-12));
    CHECK(pm.p1 == doctest::Approx(1.2966300).epsilon(1e-6));
    CHECK(pm.p2 == doctest::Approx(0.5645794553).epsilon(1e-9));
    CHECK(std::abs(pm.p1 * pm.p1 / 2 + pm.p2 * pm.p2 / 2 - 1.0) < 1e-12);
    CHECK(std::abs(1 / pm.p2 - 1 / pm.p1 - 1.0) < 1e-10);
  }
  SUBCASE("limits") {
    const PairMomenta z = invert_delays_pair(0.0, 2.0, 0.5);
    CHECK(z.p1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(z.p2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(invert_delays_pair(1e6, 1, 1).p1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
    CHECK(invert_delays_pair(1e6, 1, 1).p2 < 1e-5);
    CHECK(std::abs(invert_delays_pair(1e-8, 1, 1).p1 - 1.0) < 1e-6);
  }
  SUBCASE("antisymmetry") {
    for (double tau : {0.1, 0.7, 3.0, 40.0}) {
      const PairMomenta a = invert_delays_pair(tau, 1.3, 0.4), b = invert_delays_pair(-tau, 1.3, 0.4);
      CHECK(a.p1 == b.p2);
      CHECK(a.p2 == b.p1);
    }
  }
  CHECK_THROWS_AS(invert_delays_pair(NAN, 1, 1), Error);
}

TEST_CASE("numeric inversion") {
  SUBCASE("agrees with the closed form") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-5, 5);
    const Geometry g = Geometry::back_to_back(1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      const double tau = u(rng);
      const InversionReport rep = invert_delays_numeric({g, 1.0, {tau}});
      const PairMomenta pm = invert_delays_pair(tau, 1, 1);
      CHECK(std::abs(rep.momenta[0] - pm.p1) < 1e-9);
      CHECK(std::abs(rep.momenta[1] - pm.p2) < 1e-9);
      CHECK(rep.energy_residual < 1e-12);
      CHECK(rep.max_residual < 1e-10);
    }
  }
  SUBCASE("symmetric N = 3") {
    Geometry g;
    g.masses = {1, 1, 1};
    g.distances = {1, 1, 1};
    g.directions = {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)};
    const InversionReport rep = invert_delays_numeric({g, 1.5, {0.0, 0.0}});
    for (double p : rep.momenta) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    const InversionReport r2 = invert_delays_numeric({g, 2.0, {0.0, 0.0}});
    for (double p : r2.momenta) CHECK(p == doctest::Approx(std::sqrt(2 * 2.0 / 3)).epsilon(1e-12));
  }
  SUBCASE("unequal masses against bisection") {
    Geometry g;
    g.masses = {1.0, 1836.15, 3.0, 0.5};
    g.distances = {2.0, 0.5, 1.5, 3.0};
    g.directions.assign(4, v3(1, 0, 0));
    const std::vector<double> dt{40.0, -1.0, 2.5};
    const InversionReport rep = invert_delays_numeric({g, 0.8, dt});
    const auto ref = bisect_momenta(g.masses, g.distances, 0.8, dt);
    for (std::size_t n = 0; n < 4; ++n) CHECK(rep.momenta[n] == doctest::Approx(ref[n]).epsilon(1e-10));
  }
  SUBCASE("errors") {
    const Geometry g = Geometry::back_to_back(1.0, 1.0);
    try {
      invert_delays_numeric({g, 1.0, {INFINITY}});
      FAIL("expected infeasible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Infeasible);
    }
    CHECK_THROWS_AS(invert_delays_numeric({g, 1.0, {1.0, 2.0}}), Error);
    CHECK_THROWS_AS(invert_delays_numeric({g, -1.0, {1.0}}), Error);
  }
}

TEST_CASE("pair model density") {
  const PairModelParams prm{0.7, 3.0};
  const Vec a = v3(0.3, -0.2, 0.5), b = v3(-0.1, 0.4, 0.2);
  CHECK(pair_model_momentum_density(a, b, prm) == doctest::Approx(pair_model_momentum_density(b, a, prm)));
  // at fixed relative momentum, P' = 0 maximizes the centre-of-mass factor
  const Vec d = v3(0.05, 0, 0);
  CHECK(pair_model_momentum_density(a, -a, prm) > pair_model_momentum_density(a + d, -a + d, prm));
  // normalized: integral over p1, p2 of the x-slice product = 1 for each axis
  double norm1 = 0, cov = 0, m1 = 0, m2 = 0, s11 = 0, s22 = 0;
  const double h = 0.05;
  for (double x = -12; x <= 12; x += h)
    for (double y = -12; y <= 12; y += h) {
      const double w = pair_model_momentum_density(v3(x, 0, 0), v3(y, 0, 0), prm);
      norm1 += w, m1 += w * x, m2 += w * y, s11 += w * x * x, s22 += w * y * y, cov += w * x * y;
    }
  cov = cov / norm1 - (m1 / norm1) * (m2 / norm1);
  CHECK(cov == doctest::Approx(3.0 * 3.0 / 4 - 0.7 * 0.7).epsilon(1e-6));
  const PairModelParams factor{1.0, 2.0};
  double c2 = 0, n2 = 0;
  for (double x = -10; x <= 10; x += h)
    for (double y = -10; y <= 10; y += h) {
      const double w = pair_model_momentum_density(v3(x, 0, 0), v3(y, 0, 0), factor);
      n2 += w, c2 += w * x * y;
    }
  CHECK(std::abs(c2 / n2) < 1e-10);
  CHECK_THROWS_AS(pair_model_momentum_density(a, b, {0.0, 1.0}), Error);
}

TEST_CASE("coincidence curve") {
  const double m = 1, r = UnitSystem::from_cm(2), E = UnitSystem::from_ev(0.37);
  const Geometry g = Geometry::back_to_back(m, r);
  const double t = characteristic_time(m, r, E);
  const auto dt = tau_grid(t, -4, 4, 161);
  const Curve c = coincidence_curve(g, {1.0, 10.0}, E, dt, true);
  REQUIRE(c.points.size() == dt.size());
  double asym = 0;
  for (std::size_t i = 0; i < dt.size(); ++i)
    asym = std::max(asym, std::abs(c.points[i].probability - c.points[dt.size() - 1 - i].probability));
  CHECK(asym < 1e-10);
  CHECK(c.points[80].probability == doctest::Approx(1.0));
  for (std::size_t i = 1; i <= 80; ++i) CHECK(c.points[i].probability > c.points[i - 1].probability);

  // broad widths: only the phase-space factor is left
  const Curve flat = coincidence_curve(g, {1e4, 1e4}, E, dt, true);
  for (const CurvePoint& p : flat.points) {
    const double ps = std::pow(p.p1 * p.p2 / (m * E), 3);
    CHECK(p.probability == doctest::Approx(ps).epsilon(1e-6));
  }
  const Curve serial = coincidence_curve(g, {1.0, 10.0}, E, dt, true, Exec::Serial);
  for (std::size_t i = 0; i < dt.size(); ++i) CHECK(serial.points[i].probability == c.points[i].probability);

  // general geometry goes through the numeric inversion
  Geometry skew = g;
  skew.directions[1] = v3(0, 1, 0);
  skew.distances[1] = 1.5 * r;
  const Curve cs = coincidence_curve(skew, {1.0, 10.0}, E, tau_grid(t, -2, 2, 9));
  CHECK(cs.points.size() == 9);
  CHECK(cs.skipped.empty());
}

TEST_CASE("datasets") {
  const double m = 1, r = 100.0, E = 0.5;
  const Geometry g = Geometry::back_to_back(m, r);
  const double t = characteristic_time(m, r, E);
  const auto dt = tau_grid(t, -4, 4, 81);
  SUBCASE("deterministic") {
    const auto a = synthesize_dataset(g, {1, 10}, E, dt, 5000, 42);
    const auto b = synthesize_dataset(g, {1, 10}, E, dt, 5000, 42);
    std::stringstream sa, sb;
    write_dataset_csv(sa, a);
    write_dataset_csv(sb, b);
    CHECK(sa.str() == sb.str());
    const auto c = synthesize_dataset(g, {1, 10}, E, dt, 5000, 43);
    CHECK(c.counts != a.counts);
    const auto back = read_dataset_csv(sa, g, E);
    CHECK(back.counts == a.counts);
    for (std::size_t i = 0; i < dt.size(); ++i) CHECK(back.delta_t[i] == a.delta_t[i]);
  }
  SUBCASE("Poisson statistics") {
    const auto fine = tau_grid(t, -4, 4, 2001);
    const double n = 1e7;
    const auto ds = synthesize_dataset(g, {1, 10}, E, fine, n, 7);
    const Curve c = coincidence_curve(g, {1, 10}, E, fine);
    double total = 0;
    for (const auto& p : c.points) total += p.probability;
    double chi2 = 0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      const double mean = n * c.points[i].probability / total;
      chi2 += (ds.counts[i] - mean) * (ds.counts[i] - mean) / mean;
    }
    CHECK(chi2 / static_cast<double>(fine.size()) == doctest::Approx(1.0).epsilon(0.2));
  }
  SUBCASE("narrow widths") {
    // A narrow centre-of-mass width forces p1 = p2, i.e. DT = 0.
    const auto ds = synthesize_dataset(g, {1.0, 0.01}, E, dt, 1e4, 1);
    std::int64_t total = 0;
    for (auto k : ds.counts) total += k;
    CHECK(ds.counts[40] == total);
    // A narrow relative width forbids p1 = p2 and empties the centre.
    const auto dr = synthesize_dataset(g, {0.05, 10.0}, E, dt, 1e4, 1);
    CHECK(dr.counts[40] == 0);
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(synthesize_dataset(g, {1, 10}, E, dt, 0.0, 1), Error);
    std::stringstream bad("delta_t_au,count\n1.0,3\n0.5,2\n");
    CHECK_THROWS_AS(read_dataset_csv(bad, g, E), Error);
    std::stringstream hdr("t,n\n1,2\n");
    CHECK_THROWS_AS(read_dataset_csv(hdr, g, E), Error);
  }
}

TEST_CASE("fitting") {
  const double m = 1, r = UnitSystem::from_cm(2), E = UnitSystem::from_ev(0.37);
  const Geometry g = Geometry::back_to_back(m, r);
  const double t = characteristic_time(m, r, E);
  const auto dt = tau_grid(t, -4, 4, 81);
  const PairModelParams truth{1.0, 10.0};
  const double kappa = 1.0 / 4 - 1.0 / 100;

  // noiseless counts at a large scale
  const Curve c = coincidence_curve(g, truth, E, dt, true);
  CoincidenceDataset ds;
  ds.geometry = g;
  ds.E = E;
  for (const auto& p : c.points) {
    ds.delta_t.push_back(p.delta_t);
    ds.counts.push_back(std::llround(1e12 * p.probability));
  }
  const FitResult fit = fit_pair_model(ds, {0.5, 5.0});
  SUBCASE("noiseless data recovers sigma and Sigma") {
    CHECK(fit.params.sigma == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.params.Sigma == doctest::Approx(10.0).epsilon(1e-6));
  }
  SUBCASE("noiseless data recovers kappa") {
    CHECK(fit.kappa == doctest::Approx(kappa).epsilon(1e-6));
    CHECK(fit.rank == 2);
    CHECK_FALSE(fit.notes.empty());
    CHECK(fit.normalization == doctest::Approx(1e12).epsilon(1e-6));
  }
  SUBCASE("determinism") {
    const FitResult again = fit_pair_model(ds, {0.5, 5.0});
    CHECK(again.params.sigma == fit.params.sigma);
    CHECK(again.params.Sigma == fit.params.Sigma);
    CHECK(again.chi2 == fit.chi2);
    CHECK(fit_report_json(again) == fit_report_json(fit));
  }
  SUBCASE("rejects tiny datasets") {
    CoincidenceDataset empty;
    empty.geometry = g;
    empty.E = E;
    try {
      fit_pair_model(empty, {1, 1});
      FAIL("expected fit error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Fit);
    }
  }
  SUBCASE("report") {
    const std::string j = fit_report_json(fit);
    for (const char* key : {"\"sigma\"", "\"Sigma\"", "\"covariance\"", "\"chi2\"", "\"kappa\""})
      CHECK(j.find(key) != std::string::npos);
  }
}
