#include "itkit/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "itkit/error.hpp"
#include "itkit/units.hpp"

namespace itkit::imaging {

namespace {

// Largest per-axis standard deviation of a field.
double max_width(const ComplexField& f) {
  double w = 0.0;
  for (int a = 0; a < f.dimension(); ++a) w = std::max(w, std::sqrt(variance(f, a)));
  return w;
}

cplx kemble_prefactor(double mass, double T, int d) {
  return std::pow(mass / T, 0.5 * d) * std::polar(1.0, -kPi * d / 4.0);
}

}  // namespace

std::vector<std::string> DetectorPatch::validate() const {
  require(solid_angle > 0.0, ErrorKind::Domain, "DetectorPatch: solid angle must be positive");
  require(radial_extent > 0.0, ErrorKind::Domain, "DetectorPatch: radial extent must be positive");
  require(position.size() == 1 || position.size() == 3, ErrorKind::Shape, "DetectorPatch: position must be 1-D or 3-D");
  std::vector<std::string> warnings;
  if (position.norm() <= kMacroscopicRadius) {
    std::ostringstream os;
    os << "detector patch at |r| = " << position.norm() << " bohr is not macroscopic (threshold "
       << kMacroscopicRadius << ")";
    warnings.push_back(os.str());
  }
  return warnings;
}

double DetectorPatch::volume() const {
  if (position.size() == 1) return radial_extent;
  return position.squaredNorm() * solid_angle * radial_extent;
}

ITField apply_it_free(const ComplexField& momentum_field, double mass, double t, const Grid& r_grid, Exec exec) {
  require(momentum_field.representation == Representation::Momentum, ErrorKind::Representation,
          "apply_it_free expects a momentum-representation field");
  require(r_grid.dimension() == momentum_field.dimension(), ErrorKind::Shape, "apply_it_free: dimension mismatch");
  require(mass > 0.0, ErrorKind::Domain, "apply_it_free: mass must be positive");
  const double T = t - momentum_field.time;
  require(T > 0.0, ErrorKind::Domain, "apply_it_free: t must lie after the field time");

  ITField result{ComplexField(r_grid, Representation::Position, t), {}};
  const double sigma_p = max_width(momentum_field);
  double sigma_x = UnitSystem::hbar / (2.0 * sigma_p);
  try {
    sigma_x = max_width(to_position(momentum_field, 1.0));
  } catch (const Error&) {
    // keep the minimum-uncertainty estimate
  }
  const double ratio = T * sigma_p / (mass * sigma_x);
  if (ratio <= kAsymptoticRatio) {
    std::ostringstream os;
    os << "apply_it_free: t sigma_p / (m sigma_x) = " << ratio << " is not asymptotic (want > " << kAsymptoticRatio
       << ")";
    result.warnings.push_back(os.str());
  }

  const int d = r_grid.dimension();
  const cplx pref = kemble_prefactor(mass, T, d);
  const double k = mass / (2.0 * UnitSystem::hbar * T);
  const auto n = static_cast<std::ptrdiff_t>(r_grid.size());
  auto point = [&](std::ptrdiff_t i) {
    const Vec r = r_grid.point(static_cast<std::size_t>(i));
    return pref * std::polar(1.0, k * r.squaredNorm()) * interpolate(momentum_field, r * (mass / T));
  };
  auto& out = result.field.values;
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = point(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = point(i);
  }
  return result;
}

ITResult it_point(const ComplexField& momentum_field, double mass, double t, const Vec& r) {
  require(momentum_field.representation == Representation::Momentum, ErrorKind::Representation,
          "it_point expects a momentum-representation field");
  require(r.size() == momentum_field.dimension(), ErrorKind::Shape, "it_point: dimension mismatch");
  const double T = t - momentum_field.time;
  require(T > 0.0 && mass > 0.0, ErrorKind::Domain, "it_point: need t > field time and m > 0");
  ITResult out;
  out.momentum_point = r * (mass / T);
  out.vv_factor = std::pow(mass / T, r.size());
  out.phase = mass * r.squaredNorm() / (2.0 * UnitSystem::hbar * T);
  out.position_density = it_density(std::norm(interpolate(momentum_field, out.momentum_point)), out.vv_factor);
  return out;
}

double it_density(double momentum_density, double vv_factor) {
  require(vv_factor > 0.0, ErrorKind::Domain, "it_density: van Vleck factor must be positive");
  return vv_factor * momentum_density;
}

double detection_probability(const ComplexField& position_field, const DetectorPatch& patch) {
  require(position_field.representation == Representation::Position, ErrorKind::Representation,
          "detection_probability expects a position-representation field");
  patch.validate();
  require(patch.position.size() == position_field.dimension(), ErrorKind::Shape,
          "detection_probability: patch and field dimensions differ");
  if (!position_field.grid.contains(patch.position))
    fail(ErrorKind::Coverage, "detection_probability: patch lies outside the field grid");
  const double p = std::norm(interpolate(position_field, patch.position)) * patch.volume();
  require(p <= 1.0, ErrorKind::Domain, "detection_probability: acceptance volume too large for a point estimate");
  return p;
}

MomentumHit momentum_density_from_hits(double position_density, const Vec& r, double t, double mass) {
  require(t > 0.0 && mass > 0.0, ErrorKind::Domain, "momentum_density_from_hits: need t > 0 and m > 0");
  require(r.norm() > 0.0, ErrorKind::Domain, "momentum_density_from_hits: r must be nonzero");
  return MomentumHit{r * (mass / t), position_density * std::pow(t / mass, r.size())};
}

double many_particle_it(const JointMomentumWfn& phi, std::span<const double> masses, std::span<const double> times,
                        std::span<const Vec> positions, double tau) {
  const std::size_t N = masses.size();
  require(N >= 1 && times.size() == N && positions.size() == N, ErrorKind::Shape,
          "many_particle_it: masses, times and positions must have one entry per particle");
  std::vector<Vec> p(N);
  double vv = 1.0;
  for (std::size_t n = 0; n < N; ++n) {
    const double T = times[n] - tau;
    require(T > 0.0 && masses[n] > 0.0, ErrorKind::Domain, "many_particle_it: need t_n > tau and m_n > 0");
    p[n] = positions[n] * (masses[n] / T);
    vv *= std::pow(masses[n] / T, positions[n].size());
  }
  return vv * std::norm(phi(p));
}

double many_particle_it(const ComplexField& momentum_field, std::span<const double> masses,
                        std::span<const double> times, std::span<const Vec> positions) {
  require(momentum_field.representation == Representation::Momentum, ErrorKind::Representation,
          "many_particle_it expects a momentum-representation field");
  Eigen::Index total = 0;
  for (const Vec& r : positions) total += r.size();
  require(total == momentum_field.dimension(), ErrorKind::Shape,
          "many_particle_it: field dimension must equal the summed particle dimensions");
  auto lookup = [&](std::span<const Vec> p) {
    Vec joint(total);
    Eigen::Index k = 0;
    for (const Vec& v : p) {
      joint.segment(k, v.size()) = v;
      k += v.size();
    }
    return interpolate(momentum_field, joint);
  };
  return many_particle_it(lookup, masses, times, positions, momentum_field.time);
}

cplx incident_amplitude(cplx phi_at_p, double mass, double t_i, int dimension) {
  require(t_i > 0.0 && mass > 0.0, ErrorKind::Domain, "incident_amplitude: need t_i > 0 and m > 0");
  const double d = dimension;
  const cplx phase = std::polar(1.0, -kPi * d / 4.0);  // (-i)^(d/2), principal branch
  return phase * std::pow(kTwoPi * UnitSystem::hbar, d / 2.0) * std::pow(mass / t_i, d / 2.0) * phi_at_p;
}

cplx incident_amplitude(const ComplexField& collimator_field, double mass, double t_i, const Vec& r_i) {
  require(collimator_field.representation == Representation::Momentum, ErrorKind::Representation,
          "incident_amplitude expects a momentum-representation collimator field");
  require(r_i.size() == collimator_field.dimension(), ErrorKind::Shape, "incident_amplitude: dimension mismatch");
  require(t_i > 0.0, ErrorKind::Domain, "incident_amplitude: t_i must be positive");
  const Vec p_i = -r_i * (mass / t_i);
  return incident_amplitude(interpolate(collimator_field, p_i), mass, t_i, static_cast<int>(r_i.size()));
}

double chained_density(double final_it_density, double incident_probability) {
  require(final_it_density >= 0.0 && incident_probability >= 0.0, ErrorKind::Domain,
          "chained_density: inputs must be nonnegative");
  return final_it_density * incident_probability;
}

void write_density_csv(std::ostream& os, const ComplexField& field) {
  const bool mom = field.representation == Representation::Momentum;
  static const char* xs[] = {"x", "y", "z"};
  static const char* ps[] = {"px", "py", "pz"};
  for (int a = 0; a < field.dimension(); ++a) os << (mom ? ps[a] : xs[a]) << ',';
  os << "density\n";
  os.precision(17);
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Vec x = field.grid.point(i);
    for (Eigen::Index a = 0; a < x.size(); ++a) os << x[a] << ',';
    os << std::norm(field.values[i]) << '\n';
  }
}

void write_it_results_csv(std::ostream& os, std::span<const Vec> positions, std::span<const ITResult> results) {
  require(positions.size() == results.size(), ErrorKind::Shape, "write_it_results_csv: size mismatch");
  if (results.empty()) return;
  const auto d = positions[0].size();
  static const char* xs[] = {"x", "y", "z"};
  static const char* ps[] = {"px", "py", "pz"};
  for (Eigen::Index a = 0; a < d; ++a) os << xs[a] << ',';
  for (Eigen::Index a = 0; a < d; ++a) os << ps[a] << ',';
  os << "position_density,vv_factor,phase\n";
  os.precision(17);
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (Eigen::Index a = 0; a < d; ++a) os << positions[i][a] << ',';
    for (Eigen::Index a = 0; a < d; ++a) os << results[i].momentum_point[a] << ',';
    os << results[i].position_density << ',' << results[i].vv_factor << ',' << results[i].phase << '\n';
  }
}

}  // namespace itkit::imaging
