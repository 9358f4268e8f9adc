#include "itkit/classical.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "itkit/error.hpp"

namespace itkit::classical {

namespace {

void require_positive_time(double T, const char* what) {
  require(T > 0.0 && std::isfinite(T), ErrorKind::Domain, std::string(what) + ": T must be positive");
}

void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  require(a.size() == b.size(), ErrorKind::Shape, std::string(what) + ": vector dimensions differ");
}

}  // namespace

Trajectory Trajectory::launch(const Vec& r_start, const Vec& p_start, double t_start, double T, double mass,
                              std::optional<UniformField> field) {
  require_positive_time(T, "Trajectory::launch");
  require(mass > 0.0, ErrorKind::Domain, "Trajectory::launch: mass must be positive");
  require_same_dim(r_start, p_start, "Trajectory::launch");
  Trajectory tr;
  tr.r_start = r_start;
  tr.p_start = p_start;
  tr.t_start = t_start;
  tr.t_end = t_start + T;
  tr.mass = mass;
  tr.field = std::move(field);
  const Vec F = tr.force();
  tr.r_end = r_start + p_start * (T / mass) + F * (T * T / (2.0 * mass));
  tr.p_end = p_start + F * T;
  return tr;
}

Vec Trajectory::force() const {
  if (field) return field->force;
  return Vec::Zero(r_start.size());
}

double Trajectory::energy() const {
  const double kinetic = p_start.squaredNorm() / (2.0 * mass);
  return field ? kinetic + field->potential(r_start) : kinetic;
}

double Trajectory::action_S() const { return action_S_uniform(r_end, r_start, duration(), mass, force()); }

double Trajectory::action_W() const {
  const double T = duration();
  const Vec F = force();
  return (p_start.squaredNorm() * T + p_start.dot(F) * T * T + F.squaredNorm() * T * T * T / 3.0) / mass;
}

double Trajectory::equation_of_motion_residual() const {
  const double T = duration();
  const Vec F = force();
  const Vec r_expect = r_start + p_start * (T / mass) + F * (T * T / (2.0 * mass));
  const Vec p_expect = p_start + F * T;
  return std::max((r_end - r_expect).cwiseAbs().maxCoeff(), (p_end - p_expect).cwiseAbs().maxCoeff());
}

double action_S_free(const Vec& r, const Vec& r_start, double T, double mass) {
  require_positive_time(T, "action_S_free");
  require_same_dim(r, r_start, "action_S_free");
  return mass * (r - r_start).squaredNorm() / (2.0 * T);
}

double action_S_tilde_free(const Vec& r, const Vec& p, double T, double mass) {
  require(T >= 0.0, ErrorKind::Domain, "action_S_tilde_free: T must be non-negative");
  require_same_dim(r, p, "action_S_tilde_free");
  return p.dot(r) - p.squaredNorm() * T / (2.0 * mass);
}

double action_S_uniform(const Vec& r, const Vec& r_start, double T, double mass, const Vec& force) {
  require_positive_time(T, "action_S_uniform");
  require_same_dim(r, r_start, "action_S_uniform");
  require_same_dim(r, force, "action_S_uniform");
  return mass * (r - r_start).squaredNorm() / (2.0 * T) + force.dot(r + r_start) * T / 2.0 -
         force.squaredNorm() * T * T * T / (24.0 * mass);
}

double action_S_tilde_uniform(const Vec& r, const Vec& p, double T, double mass, const Vec& force) {
  require(T >= 0.0, ErrorKind::Domain, "action_S_tilde_uniform: T must be non-negative");
  require_same_dim(r, p, "action_S_tilde_uniform");
  require_same_dim(r, force, "action_S_tilde_uniform");
  return p.dot(r) - p.squaredNorm() * T / (2.0 * mass) + T * force.dot(r) - p.dot(force) * T * T / (2.0 * mass) -
         force.squaredNorm() * T * T * T / (6.0 * mass);
}

Vec stationary_momentum(const Vec& r, const Vec& r_start, double T, double mass, const Vec& force) {
  require_positive_time(T, "stationary_momentum");
  require_same_dim(r, r_start, "stationary_momentum");
  require_same_dim(r, force, "stationary_momentum");
  return mass * (r - r_start) / T - force * (T / 2.0);
}

Vec stationary_momentum(const Vec& r, const Vec& r_start, double T, double mass) {
  return stationary_momentum(r, r_start, T, mass, Vec::Zero(r.size()));
}

double van_vleck_time(double mass, double T, int dimension) {
  require_positive_time(T, "van_vleck_time");
  require(mass > 0.0, ErrorKind::Domain, "van_vleck_time: mass must be positive");
  return std::pow(mass / T, dimension);
}

double van_vleck_time(std::span<const double> masses, std::span<const double> times, int dimension) {
  require(masses.size() == times.size() && !masses.empty(), ErrorKind::Shape,
          "van_vleck_time: one time per particle required");
  double c = 1.0;
  for (std::size_t n = 0; n < masses.size(); ++n) c *= van_vleck_time(masses[n], times[n], dimension);
  return c;
}

TrajectoryBundle TrajectoryBundle::fixed_time(const Vec& r_start, const Vec& p_center, double T, double mass,
                                              const Vec& force) {
  require_positive_time(T, "TrajectoryBundle::fixed_time");
  TrajectoryBundle b;
  b.p_center = p_center;
  b.endpoint = [r_start, T, mass, force](const Vec& p) {
    return Trajectory::launch(r_start, p, 0.0, T, mass, UniformField(force)).r_end;
  };
  return b;
}

double van_vleck_numeric(const TrajectoryBundle& bundle, double perturbation) {
  require(perturbation > 0.0, ErrorKind::Domain, "van_vleck_numeric: perturbation must be positive");
  const auto d = bundle.p_center.size();
  Eigen::MatrixXd jac(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    Vec plus = bundle.p_center;
    Vec minus = bundle.p_center;
    plus[k] += perturbation;
    minus[k] -= perturbation;
    const Vec rp = bundle.endpoint(plus);
    const Vec rm = bundle.endpoint(minus);
    require(rp.size() == d, ErrorKind::Shape, "van_vleck_numeric: endpoint has wrong dimension");
    jac.col(k) = (rp - rm) / (2.0 * perturbation);
  }
  const double det = std::abs(jac.determinant());
  double hadamard = 1.0;
  for (Eigen::Index k = 0; k < d; ++k) hadamard *= jac.col(k).norm();
  if (!(det > 1e-8 * hadamard) || hadamard == 0.0)
    fail(ErrorKind::Caustic, "van_vleck_numeric: singular trajectory Jacobian (conjugate point)");
  return 1.0 / det;
}

double characteristic_action_W_free(const Vec& r, const Vec& r_start, double E, double mass) {
  require(E > 0.0, ErrorKind::Domain, "characteristic_action_W_free: E must be positive");
  require_same_dim(r, r_start, "characteristic_action_W_free");
  return std::sqrt(2.0 * mass * E) * (r - r_start).norm();
}

TimeOfFlight time_of_flight_free(const Vec& r, const Vec& r_start, double E, double mass) {
  require(E > 0.0, ErrorKind::Domain, "time_of_flight_free: E must be positive");
  require_same_dim(r, r_start, "time_of_flight_free");
  const double R = (r - r_start).norm();
  require(R > 0.0, ErrorKind::Domain, "time_of_flight_free: coincident endpoints");
  const double T = mass * R / std::sqrt(2.0 * mass * E);
  return {T, -T / (2.0 * E)};
}

double density_D_free(const Vec& r, const Vec& r_start, double mass) {
  require_same_dim(r, r_start, "density_D_free");
  const double R = (r - r_start).norm();
  require(R > 0.0, ErrorKind::Singularity, "density_D_free: coincident endpoints");
  return mass * mass / (R * R);
}

double density_D_berry(double mass, double p_initial, double p_final, double dOmega_dA) {
  require(p_final > 0.0, ErrorKind::Domain, "density_D_berry: final momentum must be positive");
  return mass * mass * (p_initial / p_final) * dOmega_dA;
}

DensityFactors density_factors_free(const Vec& r, const Vec& r_start, double E, double mass, int dimension) {
  const TimeOfFlight tof = time_of_flight_free(r, r_start, E, mass);
  DensityFactors f;
  f.C = van_vleck_time(mass, tof.T, dimension);
  f.dT_dE = tof.dT_dE;
  f.D = -tof.dT_dE * f.C;
  return f;
}

std::vector<Trajectory> enumerate_trajectories_uniform_1d(double r_start, double r, double E, double mass,
                                                          double force) {
  require(mass > 0.0, ErrorKind::Domain, "enumerate_trajectories_uniform_1d: mass must be positive");
  std::vector<Trajectory> out;
  const double ke_start = E + force * r_start;
  const double ke_end = E + force * r;
  if (ke_start < 0.0 || ke_end < 0.0) return out;
  const double p0 = std::sqrt(2.0 * mass * ke_start);
  const double p1 = std::sqrt(2.0 * mass * ke_end);
  const Vec F1 = Vec::Constant(1, force);

  std::vector<double> signs{+1.0};
  if (p0 > 0.0) signs.push_back(-1.0);
  std::vector<std::pair<double, double>> found;  // (p', T)
  const double scale = std::abs(r - r_start) + 1.0;
  for (double s : signs) {
    const double pp = s * p0;
    std::vector<double> roots;
    if (force == 0.0) {
      if (pp != 0.0) roots.push_back(mass * (r - r_start) / pp);
    } else {
      // F T^2 + 2 p' T + 2 m (r' - r) = 0, discriminant 4 p^2.
      const double b = 2.0 * pp;
      const double c = 2.0 * mass * (r_start - r);
      const double q = -0.5 * (b + (b >= 0.0 ? 1.0 : -1.0) * 2.0 * p1);
      if (q != 0.0) {
        roots.push_back(q / force);
        roots.push_back(c / q);
      } else {
        roots.push_back(std::sqrt(std::max(0.0, -c / force)));
      }
    }
    for (double T : roots) {
      if (!(T > 1e-12 * scale) || !std::isfinite(T)) continue;
      bool dup = false;
      for (const auto& f : found)
        if (std::abs(f.first - pp) <= 1e-12 * (p0 + 1.0) && std::abs(f.second - T) <= 1e-10 * T) dup = true;
      if (!dup) found.emplace_back(pp, T);
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  for (const auto& [pp, T] : found)
    out.push_back(Trajectory::launch(Vec::Constant(1, r_start), Vec::Constant(1, pp), 0.0, T, mass,
                                     UniformField(F1)));
  return out;
}

double action_W_uniform_1d(double r, double r_start, double E, double mass, double force, std::size_t branch) {
  const auto trajs = enumerate_trajectories_uniform_1d(r_start, r, E, mass, force);
  require(branch < trajs.size(), ErrorKind::Domain,
          "action_W_uniform_1d: branch " + std::to_string(branch) + " does not exist");
  return trajs[branch].action_W();
}

void write_trajectories_csv(std::ostream& os, std::span<const Trajectory> trajectories) {
  const auto dim = trajectories.empty() ? 1 : trajectories.front().r_start.size();
  static const char* axes[] = {"x", "y", "z"};
  auto header_vec = [&](const char* name) {
    if (dim == 1) {
      os << name << ',';
      return;
    }
    for (Eigen::Index a = 0; a < dim; ++a) os << name << '_' << axes[a] << ',';
  };
  header_vec("r_start");
  header_vec("p_start");
  os << "t_start,";
  header_vec("r_end");
  header_vec("p_end");
  os << "t_end,S,W,T\n";
  os << std::setprecision(17);
  for (const Trajectory& t : trajectories) {
    auto row_vec = [&](const Vec& v) {
      for (Eigen::Index a = 0; a < v.size(); ++a) os << v[a] << ',';
    };
    row_vec(t.r_start);
    row_vec(t.p_start);
    os << t.t_start << ',';
    row_vec(t.r_end);
    row_vec(t.p_end);
    os << t.t_end << ',' << t.action_S() << ',' << t.action_W() << ',' << t.duration() << '\n';
  }
}

}  // namespace itkit::classical
