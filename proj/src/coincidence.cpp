#include "itkit/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "itkit/error.hpp"
#include "itkit/units.hpp"
#include "json.hpp"

namespace itkit::coincidence {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double log_gauss3(double k2, double s) { return -1.5 * std::log(kTwoPi * s * s) - k2 / (2.0 * s * s); }

struct PairKinematics {
  double rel2 = 0.0;  // |p'|^2, p' = (p1 - p2)/2
  double com2 = 0.0;  // |P'|^2, P' = p1 + p2
};

PairKinematics kinematics(const Vec& p1, const Vec& p2) {
  return {0.25 * (p1 - p2).squaredNorm(), (p1 + p2).squaredNorm()};
}

double log_pair_density(const PairKinematics& k, const PairModelParams& params) {
  return log_gauss3(k.rel2, params.sigma) + log_gauss3(k.com2, params.Sigma);
}

// Equal-arrival-time momenta: p_n = m_n r_n / T with sum p_n^2/(2 m_n) = E.
std::vector<double> equal_time_point(const Geometry& g, double E, double& T) {
  double s = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) s += g.masses[n] * g.distances[n] * g.distances[n];
  T = std::sqrt(s / (2.0 * E));
  std::vector<double> p(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) p[n] = g.masses[n] * g.distances[n] / T;
  return p;
}

// Solver state for the reduced unknowns x = (p_2..p_N).
struct DelaySystem {
  const Geometry& g;
  double E;
  std::vector<double> delays;  // scaled by the continuation parameter

  // p_1 from the energy constraint; false when the remaining energy is not positive.
  bool first_momentum(const Vec& x, double& p1) const {
    double rest = E;
    for (Eigen::Index k = 0; k < x.size(); ++k) rest -= x[k] * x[k] / (2.0 * g.masses[static_cast<std::size_t>(k) + 1]);
    if (!(rest > 0.0)) return false;
    p1 = std::sqrt(2.0 * g.masses[0] * rest);
    return true;
  }

  bool residual(const Vec& x, Vec& F) const {
    double p1 = 0.0;
    if ((x.array() <= 0.0).any() || !first_momentum(x, p1)) return false;
    const double t1 = g.masses[0] * g.distances[0] / p1;
    F.resize(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const std::size_t n = static_cast<std::size_t>(k) + 1;
      F[k] = g.masses[n] * g.distances[n] / x[k] - t1 - delays[static_cast<std::size_t>(k)];
    }
    return true;
  }

  Mat jacobian(const Vec& x) const {
    double p1 = 0.0;
    first_momentum(x, p1);
    const double c = g.masses[0] * g.distances[0] / (p1 * p1);
    Mat J(x.size(), x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double dp1 = -(g.masses[0] * x[k]) / (g.masses[static_cast<std::size_t>(k) + 1] * p1);
      for (Eigen::Index n = 0; n < x.size(); ++n) J(n, k) = c * dp1;
      J(k, k) -= g.masses[static_cast<std::size_t>(k) + 1] * g.distances[static_cast<std::size_t>(k) + 1] / (x[k] * x[k]);
    }
    return J;
  }
};

// Damped Newton from x; returns false when it stalls.
bool newton(const DelaySystem& sys, Vec& x, double tscale, int& iterations) {
  Vec F;
  if (!sys.residual(x, F)) return false;
  for (int it = 0; it < 100; ++it) {
    const double fnorm = F.lpNorm<Eigen::Infinity>() / tscale;
    if (fnorm < 1e-14) return true;
    const Mat J = sys.jacobian(x);
    const Vec dx = J.fullPivLu().solve(-F);
    double step = 1.0;
    bool accepted = false;
    for (int h = 0; h < 60; ++h, step *= 0.5) {
      const Vec xt = x + step * dx;
      Vec Ft;
      if (!sys.residual(xt, Ft)) continue;
      if (Ft.lpNorm<Eigen::Infinity>() / tscale < (1.0 - 1e-4 * step) * fnorm || fnorm < 1e-12) {
        x = xt;
        F = Ft;
        accepted = true;
        break;
      }
    }
    ++iterations;
    if (!accepted) return F.lpNorm<Eigen::Infinity>() / tscale < 1e-12;
  }
  return F.lpNorm<Eigen::Infinity>() / tscale < 1e-12;
}

}  // namespace

void Geometry::validate() const {
  require(!masses.empty(), ErrorKind::Shape, "geometry: at least one particle");
  require(distances.size() == masses.size() && directions.size() == masses.size(), ErrorKind::Shape,
          "geometry: masses, distances and directions must have one entry per particle");
  for (std::size_t n = 0; n < masses.size(); ++n) {
    require(masses[n] > 0.0 && std::isfinite(masses[n]), ErrorKind::Domain, "geometry: masses must be positive");
    require(distances[n] > 0.0 && std::isfinite(distances[n]), ErrorKind::Domain,
            "geometry: detector distances must be positive");
    require(directions[n].size() == 3 && std::abs(directions[n].norm() - 1.0) < 1e-9, ErrorKind::Domain,
            "geometry: directions must be unit 3-vectors");
  }
}

Geometry Geometry::back_to_back(double mass, double distance) {
  Vec z = Vec::Zero(3);
  z[2] = 1.0;
  return Geometry{{mass, mass}, {distance, distance}, {z, Vec(-z)}};
}

bool Geometry::symmetric_pair() const {
  return size() == 2 && masses[0] == masses[1] && distances[0] == distances[1];
}

void DelayObservation::validate() const {
  geometry.validate();
  require(E > 0.0 && std::isfinite(E), ErrorKind::Domain, "delay observation: E must be positive");
  require(delays.size() + 1 == geometry.size(), ErrorKind::Shape, "delay observation: need N-1 delays");
  for (double d : delays)
    if (!std::isfinite(d)) fail(ErrorKind::Infeasible, "delay observation: delays must be finite");
}

void PairModelParams::validate() const {
  require(sigma > 0.0 && Sigma > 0.0 && std::isfinite(sigma) && std::isfinite(Sigma), ErrorKind::Domain,
          "pair model: sigma and Sigma must be positive");
}

double characteristic_time(double mass, double distance, double E) {
  require(mass > 0.0 && distance > 0.0 && E > 0.0, ErrorKind::Domain, "characteristic_time: inputs must be positive");
  return std::sqrt(mass * distance * distance / E);
}

PairMomenta invert_delays_pair(double tau, double mass, double E) {
  require(mass > 0.0 && E > 0.0, ErrorKind::Domain, "invert_delays_pair: need m > 0 and E > 0");
  if (!std::isfinite(tau)) fail(ErrorKind::Infeasible, "invert_delays_pair: delay must be finite");
  const double scale = std::sqrt(mass * E);
  const double s = std::sqrt(1.0 + 2.0 * tau * tau);
  const double odd = tau / (s + 1.0);
  const double even = std::sqrt(0.5 * (1.0 + 2.0 / (s + 1.0)));
  return {scale * (even + odd), scale * (even - odd)};
}

InversionReport invert_delays_numeric(const DelayObservation& obs) {
  obs.validate();
  const Geometry& g = obs.geometry;
  const std::size_t N = g.size();
  double T0 = 0.0;
  std::vector<double> start = equal_time_point(g, obs.E, T0);
  InversionReport rep;
  if (N == 1) {
    rep.momenta = {std::sqrt(2.0 * g.masses[0] * obs.E)};
    return rep;
  }

  Vec x(static_cast<Eigen::Index>(N - 1));
  for (std::size_t n = 1; n < N; ++n) x[static_cast<Eigen::Index>(n - 1)] = start[n];
  DelaySystem sys{g, obs.E, std::vector<double>(N - 1, 0.0)};

  // Continuation in lambda: delays lambda * DT from the equal-time point.
  double lambda = 0.0;
  double h = 1.0;
  while (lambda < 1.0) {
    const double target = std::min(1.0, lambda + h);
    for (std::size_t k = 0; k + 1 < N; ++k) sys.delays[k] = target * obs.delays[k];
    Vec trial = x;
    if (newton(sys, trial, T0, rep.iterations)) {
      x = trial;
      lambda = target;
      h = std::min(2.0 * h, 1.0);
    } else {
      h *= 0.5;
      if (h < 1e-8) fail(ErrorKind::Numerical, "invert_delays_numeric: continuation stalled");
    }
  }

  double p1 = 0.0;
  sys.first_momentum(x, p1);
  rep.momenta.assign(N, 0.0);
  rep.momenta[0] = p1;
  for (std::size_t n = 1; n < N; ++n) rep.momenta[n] = x[static_cast<Eigen::Index>(n - 1)];
  Vec F;
  sys.residual(x, F);
  rep.max_residual = F.lpNorm<Eigen::Infinity>() / T0;
  double e = 0.0;
  for (std::size_t n = 0; n < N; ++n) e += rep.momenta[n] * rep.momenta[n] / (2.0 * g.masses[n]);
  rep.energy_residual = std::abs(e - obs.E) / obs.E;
  if (!(rep.max_residual < 1e-10))
    fail(ErrorKind::Numerical, "invert_delays_numeric: residual " + std::to_string(rep.max_residual) + " too large");
  return rep;
}

double pair_model_momentum_density(const Vec& p1, const Vec& p2, const PairModelParams& params) {
  params.validate();
  require(p1.size() == 3 && p2.size() == 3, ErrorKind::Shape, "pair model: momenta must be 3-vectors");
  return std::exp(log_pair_density(kinematics(p1, p2), params));
}

Curve coincidence_curve(const Geometry& geometry, const PairModelParams& params, double E,
                        std::span<const double> delta_t, bool normalize_peak, Exec exec) {
  geometry.validate();
  params.validate();
  require(geometry.size() == 2, ErrorKind::Shape, "coincidence_curve: pair geometry required");
  require(E > 0.0, ErrorKind::Domain, "coincidence_curve: E must be positive");

  const auto n = static_cast<std::ptrdiff_t>(delta_t.size());
  std::vector<CurvePoint> pts(delta_t.size());
  std::vector<char> ok(delta_t.size(), 0);
  const bool analytic = geometry.symmetric_pair();
  const double t = characteristic_time(geometry.masses[0], geometry.distances[0], E);

  auto eval = [&](std::ptrdiff_t i) {
    const auto u = static_cast<std::size_t>(i);
    CurvePoint& c = pts[u];
    c.delta_t = delta_t[u];
    try {
      if (analytic) {
        const PairMomenta pm = invert_delays_pair(delta_t[u] / t, geometry.masses[0], E);
        c.p1 = pm.p1;
        c.p2 = pm.p2;
      } else {
        const InversionReport r = invert_delays_numeric(DelayObservation{geometry, E, {delta_t[u]}});
        c.p1 = r.momenta[0];
        c.p2 = r.momenta[1];
      }
    } catch (const Error&) {
      return;
    }
    const double ps = std::pow(c.p1 / geometry.distances[0], 3) * std::pow(c.p2 / geometry.distances[1], 3);
    const Vec k1 = c.p1 * geometry.directions[0];
    const Vec k2 = c.p2 * geometry.directions[1];
    c.probability = ps * std::exp(log_pair_density(kinematics(k1, k2), params));
    ok[u] = 1;
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) eval(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) eval(i);
  }

  Curve curve;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (ok[i])
      curve.points.push_back(pts[i]);
    else
      curve.skipped.push_back(delta_t[i]);
  }
  if (normalize_peak && !curve.points.empty()) {
    double peak = 0.0;
    for (const CurvePoint& c : curve.points) peak = std::max(peak, c.probability);
    if (peak > 0.0)
      for (CurvePoint& c : curve.points) c.probability /= peak;
  }
  return curve;
}

void CoincidenceDataset::validate() const {
  require(delta_t.size() == counts.size(), ErrorKind::Shape, "dataset: one count per delay");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    require(counts[i] >= 0, ErrorKind::Domain, "dataset: counts must be nonnegative");
    require(std::isfinite(delta_t[i]), ErrorKind::Domain, "dataset: delays must be finite");
    if (i > 0) require(delta_t[i] > delta_t[i - 1], ErrorKind::Domain, "dataset: delays must increase strictly");
  }
}

CoincidenceDataset synthesize_dataset(const Geometry& geometry, const PairModelParams& params, double E,
                                      std::span<const double> delta_t, double n_events, std::uint64_t seed) {
  require(n_events > 0.0, ErrorKind::Domain, "synthesize_dataset: n_events must be positive");
  const Curve curve = coincidence_curve(geometry, params, E, delta_t, false, Exec::Serial);
  require(curve.skipped.empty(), ErrorKind::Infeasible, "synthesize_dataset: some delays have no inversion");
  double total = 0.0;
  for (const CurvePoint& c : curve.points) total += c.probability;
  require(total > 0.0, ErrorKind::Degenerate, "synthesize_dataset: model curve vanishes on the grid");

  CoincidenceDataset ds;
  ds.geometry = geometry;
  ds.E = E;
  ds.normalization = n_events / total;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const double mean = ds.normalization * curve.points[i].probability;
    std::mt19937_64 engine(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i))));
    std::int64_t k = 0;
    if (mean > 0.0) k = std::poisson_distribution<std::int64_t>(mean)(engine);
    ds.delta_t.push_back(curve.points[i].delta_t);
    ds.counts.push_back(k);
  }
  ds.validate();
  return ds;
}

FitResult fit_pair_model(const CoincidenceDataset& dataset, const PairModelParams& initial, int max_iterations) {
  dataset.validate();
  initial.validate();
  const std::size_t n = dataset.counts.size();
  if (n < 5) fail(ErrorKind::Fit, "fit_pair_model: need at least 5 data rows, got " + std::to_string(n));
  const Geometry& g = dataset.geometry;
  g.validate();
  require(g.size() == 2, ErrorKind::Shape, "fit_pair_model: pair geometry required");

  // Kinematics do not depend on the parameters: invert every delay once.
  PairModelParams unit{1.0, 1.0};
  const Curve curve = coincidence_curve(g, unit, dataset.E, dataset.delta_t, false, Exec::Serial);
  if (!curve.skipped.empty()) fail(ErrorKind::Fit, "fit_pair_model: dataset contains delays with no inversion");
  const std::vector<double> zero{0.0};
  const CurvePoint ref = coincidence_curve(g, unit, dataset.E, zero, false, Exec::Serial).points.at(0);

  auto kin_of = [&](const CurvePoint& c) { return kinematics(c.p1 * g.directions[0], c.p2 * g.directions[1]); };
  auto log_ps = [&](const CurvePoint& c) {
    return 3.0 * std::log(c.p1 / g.distances[0]) + 3.0 * std::log(c.p2 / g.distances[1]);
  };
  const PairKinematics k0 = kin_of(ref);
  const double lps0 = log_ps(ref);
  std::vector<PairKinematics> kin(n);
  std::vector<double> lps(n), y(n), w(n);
  double ymax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kin[i] = kin_of(curve.points[i]);
    lps[i] = log_ps(curve.points[i]);
    y[i] = static_cast<double>(dataset.counts[i]);
    w[i] = std::sqrt(std::max(y[i], 1.0));
    ymax = std::max(ymax, y[i]);
  }
  if (ymax <= 0.0) fail(ErrorKind::Fit, "fit_pair_model: dataset has no counts");

  // theta = (log sigma, log Sigma, log A)
  auto model = [&](const Vec& th, std::size_t i) {
    const PairModelParams p{std::exp(th[0]), std::exp(th[1])};
    return std::exp(th[2] + lps[i] - lps0 + log_pair_density(kin[i], p) - log_pair_density(k0, p));
  };
  auto evaluate = [&](const Vec& th, Vec& r, Mat& J) {
    r.resize(static_cast<Eigen::Index>(n));
    J.resize(static_cast<Eigen::Index>(n), 3);
    const double s2 = std::exp(2.0 * th[0]);
    const double S2 = std::exp(2.0 * th[1]);
    for (std::size_t i = 0; i < n; ++i) {
      const double m = model(th, i);
      const auto row = static_cast<Eigen::Index>(i);
      r[row] = (y[i] - m) / w[i];
      J(row, 0) = -m * (kin[i].rel2 - k0.rel2) / s2 / w[i];
      J(row, 1) = -m * (kin[i].com2 - k0.com2) / S2 / w[i];
      J(row, 2) = -m / w[i];
    }
    return r.squaredNorm();
  };

  Vec th(3);
  th << std::log(initial.sigma), std::log(initial.Sigma), std::log(ymax);
  Vec r;
  Mat J;
  double chi2 = evaluate(th, r, J);
  double lambda = 1e-3;
  FitResult out;
  bool converged = false;
  int it = 0;
  for (; it < max_iterations && !converged; ++it) {
    const Vec grad = J.transpose() * r;
    if (grad.norm() <= 1e-12 * (1.0 + chi2)) {
      converged = true;
      break;
    }
    // Minimum-norm damped step: directions the data cannot see get no motion,
    // otherwise the flat sigma/Sigma valley lets both drift without bound.
    Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vec sv = svd.singularValues();
    const Vec ur = svd.matrixU().transpose() * r;
    bool accepted = false;
    while (lambda < 1e16) {
      Vec step = Vec::Zero(3);
      for (int k = 0; k < 3; ++k) {
        if (sv[k] <= 1e-9 * sv[0]) continue;
        step -= svd.matrixV().col(k) * (sv[k] * ur[k] / (sv[k] * sv[k] + lambda * sv[0] * sv[0]));
      }
      const Vec tt = th + step;
      Vec rt;
      Mat Jt;
      const double c2 = tt.allFinite() ? evaluate(tt, rt, Jt) : INFINITY;
      if (std::isfinite(c2) && c2 <= chi2) {
        const double drop = chi2 - c2;
        th = tt;
        r = rt;
        J = Jt;
        chi2 = c2;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (drop <= 1e-12 * (1.0 + chi2) && step.norm() < 1e-8) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // No downhill step at any damping: stationary to working precision.
      converged = (J.transpose() * r).norm() <= 1e-6 * (1.0 + chi2);
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "fit_pair_model: no convergence after " << it << " iterations (chi2 = " << chi2 << ", sigma = "
       << std::exp(th[0]) << ", Sigma = " << std::exp(th[1]) << ", lambda = " << lambda << ")";
    fail(ErrorKind::Fit, os.str());
  }

  out.params = {std::exp(th[0]), std::exp(th[1])};
  out.normalization = std::exp(th[2]);
  out.iterations = it;
  out.chi2 = chi2;
  out.dof = static_cast<int>(n) - 3;
  out.kappa = 1.0 / (4.0 * out.params.sigma * out.params.sigma) - 1.0 / (out.params.Sigma * out.params.Sigma);
  out.residuals.assign(r.data(), r.data() + r.size());

  Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec sv = svd.singularValues();
  const double cut = 1e-9 * sv[0];
  Mat pinv = Mat::Zero(3, 3);
  for (int k = 0; k < 3; ++k) {
    if (sv[k] > cut) {
      ++out.rank;
      pinv += svd.matrixV().col(k) * svd.matrixV().col(k).transpose() / (sv[k] * sv[k]);
    }
  }
  const Vec lin = (Vec(3) << out.params.sigma, out.params.Sigma, out.normalization).finished();
  out.covariance = lin.asDiagonal() * pinv * lin.asDiagonal();
  // With equal masses the energy fixes |p1|^2 + |p2|^2, so both Gaussian
  // exponents are linear in d = p1.p2 and the model depends on kappa alone.
  if (g.masses[0] == g.masses[1]) {
    const double d0 = ref.p1 * ref.p2 * g.directions[0].dot(g.directions[1]);
    Mat J2(static_cast<Eigen::Index>(n), 2);
    for (std::size_t i = 0; i < n; ++i) {
      const double m = model(th, i);
      const double d = curve.points[i].p1 * curve.points[i].p2 * g.directions[0].dot(g.directions[1]);
      J2(static_cast<Eigen::Index>(i), 0) = -m * (d - d0) / w[i];
      J2(static_cast<Eigen::Index>(i), 1) = -m / w[i];
    }
    const Mat F = J2.transpose() * J2;
    if (std::abs(F.determinant()) > 0.0) out.kappa_stderr = std::sqrt(F.inverse()(0, 0));
  }
  if (out.rank < 3) {
    out.notes.push_back(
        "Fisher matrix is rank deficient: in this geometry sigma and Sigma enter only through kappa = "
        "1/(4 sigma^2) - 1/Sigma^2, so they cannot be determined separately; covariance is a pseudo-inverse");
  }
  return out;
}

void write_dataset_csv(std::ostream& os, const CoincidenceDataset& dataset) {
  os << "delta_t_au,count\n";
  os.precision(17);
  for (std::size_t i = 0; i < dataset.counts.size(); ++i) os << dataset.delta_t[i] << ',' << dataset.counts[i] << '\n';
}

CoincidenceDataset read_dataset_csv(std::istream& is, const Geometry& geometry, double E) {
  CoincidenceDataset ds;
  ds.geometry = geometry;
  ds.E = E;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind("delta_t_au,count", 0) != 0)
        fail(ErrorKind::Config, "dataset: expected header 'delta_t_au,count' at line " + std::to_string(lineno));
      header = true;
      continue;
    }
    std::istringstream ls(line);
    double t = 0.0;
    char comma = 0;
    std::int64_t c = 0;
    if (!(ls >> t >> comma >> c) || comma != ',')
      fail(ErrorKind::Config, "dataset: malformed row at line " + std::to_string(lineno));
    ds.delta_t.push_back(t);
    ds.counts.push_back(c);
  }
  if (!header) fail(ErrorKind::Config, "dataset: missing header");
  ds.validate();
  return ds;
}

void write_curve_csv(std::ostream& os, const Curve& curve) {
  os << "delta_t_au,p1_au,p2_au,probability\n";
  os.precision(17);
  for (const CurvePoint& c : curve.points) os << c.delta_t << ',' << c.p1 << ',' << c.p2 << ',' << c.probability << '\n';
}

std::string fit_report_json(const FitResult& fit) {
  nlohmann::json j;
  j["params"] = {{"sigma", fit.params.sigma}, {"Sigma", fit.params.Sigma}, {"normalization", fit.normalization}};
  j["kappa"] = fit.kappa;
  if (std::isfinite(fit.kappa_stderr)) j["kappa_stderr"] = fit.kappa_stderr;
  j["chi2"] = fit.chi2;
  j["dof"] = fit.dof;
  j["iterations"] = fit.iterations;
  j["rank"] = fit.rank;
  nlohmann::json cov = nlohmann::json::array();
  for (Eigen::Index a = 0; a < fit.covariance.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index b = 0; b < fit.covariance.cols(); ++b) row.push_back(fit.covariance(a, b));
    cov.push_back(row);
  }
  j["covariance"] = cov;
  j["covariance_order"] = {"sigma", "Sigma", "normalization"};
  j["residuals"] = fit.residuals;
  j["notes"] = fit.notes;
  return j.dump(2);
}

}  // namespace itkit::coincidence
