#include "itkit/scatter.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "itkit/error.hpp"
#include "itkit/special.hpp"
#include "itkit/units.hpp"

namespace itkit::scatter {

namespace {

double separation_of(const Vec& R, const Vec& R_start, const char* what) {
  require(R.size() == R_start.size(), ErrorKind::Shape, std::string(what) + ": dimension mismatch");
  const double s = (R - R_start).norm();
  if (!(s > 0.0)) fail(ErrorKind::Singularity, std::string(what) + ": coincident points");
  return s;
}

void check_hyper_vector(const HyperConfig& c, const Vec& R, const char* what) {
  require(R.size() == 3 * c.n_particles(), ErrorKind::Shape, std::string(what) + ": hyper-vector must have 3N entries");
}

}  // namespace

const char* to_string(GreenForm form) noexcept {
  switch (form) {
    case GreenForm::ExactFree: return "exact-free";
    case GreenForm::Semiclassical: return "semiclassical";
    case GreenForm::HyperAsymptotic: return "hyper-asymptotic";
    case GreenForm::HyperHankel: return "hyper-hankel";
  }
  return "unknown";
}

cplx green_free(const Vec& r, const Vec& r_start, double E, double mass) {
  require(E > 0.0 && mass > 0.0, ErrorKind::Domain, "green_free: need E > 0 and m > 0");
  const double R = separation_of(r, r_start, "green_free");
  const double hbar = UnitSystem::hbar;
  const double p = std::sqrt(2.0 * mass * E);
  return -(mass / (kTwoPi * hbar * hbar)) * std::polar(1.0, p * R / hbar) / R;
}

cplx green_semiclassical(double W, double D) {
  if (!(D > 0.0)) fail(ErrorKind::Caustic, "green_semiclassical: trajectory density must be positive");
  const double hbar = UnitSystem::hbar;
  const cplx i(0.0, 1.0);
  return (1.0 / (i * hbar)) * (std::sqrt(D) / (kTwoPi * i * hbar)) * std::polar(1.0, W / hbar);
}

double vv_time_independent(double p, double R, int dimension) {
  require(p > 0.0 && R > 0.0, ErrorKind::Domain, "vv_time_independent: need p > 0 and R > 0");
  return std::pow(p / R, dimension);
}

double ti_it_density(double momentum_density, double vv_factor) {
  require(vv_factor > 0.0, ErrorKind::Domain, "ti_it_density: van Vleck factor must be positive");
  return vv_factor * momentum_density;
}

double amplitude_from_momentum_wfn(double momentum_density, double E, double mass, double dT_dE) {
  require(E > 0.0 && mass > 0.0, ErrorKind::Domain, "amplitude_from_momentum_wfn: need E > 0 and m > 0");
  if (dT_dE == 0.0 || !std::isfinite(dT_dE))
    fail(ErrorKind::Degenerate, "amplitude_from_momentum_wfn: dT/dE must be finite and nonzero");
  return mass * mass * momentum_density / std::abs(dT_dE);
}

AmplitudeEval born_amplitude(const Grid& grid, std::span<const double> potential, const Vec& p_in, const Vec& p_out,
                             double mass, Exec exec) {
  require(grid.dimension() == 3, ErrorKind::Shape, "born_amplitude: potential must be sampled on a 3-D grid");
  require(potential.size() == grid.size(), ErrorKind::Shape, "born_amplitude: potential does not match the grid");
  require(p_in.size() == 3 && p_out.size() == 3, ErrorKind::Shape, "born_amplitude: momenta must be 3-vectors");
  require(mass > 0.0, ErrorKind::Domain, "born_amplitude: mass must be positive");
  const double scale = std::max(1.0, p_in.norm());
  if (std::abs(p_out.norm() - p_in.norm()) > 1e-10 * scale)
    fail(ErrorKind::Domain, "born_amplitude: scattering must be elastic (|p_out| = |p_in|)");

  double edge = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < potential.size(); ++i) {
    if (!std::isfinite(potential[i])) fail(ErrorKind::Coverage, "born_amplitude: potential is not finite");
    total += std::abs(potential[i]);
    if (grid.on_boundary(i)) edge += std::abs(potential[i]);
  }
  if (total > 0.0 && edge > 1e-10 * total)
    fail(ErrorKind::Coverage, "born_amplitude: potential has not decayed at the grid boundary");

  const Vec q = p_in - p_out;
  const cplx integral =
      exec == Exec::Parallel ? kernels::fourier_sum(grid, potential, q) : kernels::serial::fourier_sum(grid, potential, q);
  const double hbar = UnitSystem::hbar;
  return AmplitudeEval{p_out, p_in, -(mass / (kTwoPi * hbar * hbar)) * integral, AmplitudeEval::Source::Born};
}

double cross_section(cplx f) { return std::norm(f); }

double cross_section(const AmplitudeEval& amp) { return cross_section(amp.f); }

double detection_probability_ti(cplx f, double incident_probability, double p_i, double mass, double dt,
                                double solid_angle) {
  require(incident_probability >= 0.0 && p_i >= 0.0 && dt >= 0.0 && solid_angle >= 0.0, ErrorKind::Domain,
          "detection_probability_ti: inputs must be nonnegative");
  require(mass > 0.0, ErrorKind::Domain, "detection_probability_ti: mass must be positive");
  return incident_probability * (p_i / mass) * dt * std::norm(f) * solid_angle;
}

Vec hyper_vector(std::span<const double> masses, std::span<const Vec> positions, double mu) {
  require(masses.size() == positions.size() && !masses.empty(), ErrorKind::Shape,
          "hyper_vector: one position per mass");
  require(mu > 0.0, ErrorKind::Domain, "hyper_vector: mu must be positive");
  Vec out(3 * static_cast<Eigen::Index>(masses.size()));
  for (std::size_t n = 0; n < masses.size(); ++n) {
    require(positions[n].size() == 3, ErrorKind::Shape, "hyper_vector: positions must be 3-vectors");
    require(masses[n] > 0.0, ErrorKind::Domain, "hyper_vector: masses must be positive");
    out.segment(3 * static_cast<Eigen::Index>(n), 3) = std::sqrt(masses[n] / mu) * positions[n];
  }
  return out;
}

HyperConfig hyper_config(std::span<const double> masses, std::span<const Vec> positions, double mu, double E) {
  require(E > 0.0, ErrorKind::Domain, "hyper_config: E must be positive");
  HyperConfig c;
  c.masses.assign(masses.begin(), masses.end());
  c.positions.assign(positions.begin(), positions.end());
  c.mu = mu;
  c.E = E;
  c.hyperradius = hyper_vector(masses, positions, mu).norm();
  c.hypermomentum = std::sqrt(2.0 * mu * E);
  c.eta = 1.0;
  for (double m : masses) c.eta *= std::pow(m / mu, 3);
  const int N = c.n_particles();
  c.alpha = (3.0 * N - 2.0) / 2.0;
  return c;
}

double characteristic_time_N(const HyperConfig& config, std::span<const Vec> displacements, double E) {
  require(E > 0.0, ErrorKind::Domain, "characteristic_time_N: E must be positive");
  require(displacements.size() == config.masses.size(), ErrorKind::Shape,
          "characteristic_time_N: one displacement per particle");
  double s = 0.0;
  for (std::size_t n = 0; n < displacements.size(); ++n) s += config.masses[n] * displacements[n].squaredNorm();
  return std::sqrt(s / (2.0 * E));
}

double hyper_action(const HyperConfig& config, const Vec& R, const Vec& R_start) {
  check_hyper_vector(config, R, "hyper_action");
  check_hyper_vector(config, R_start, "hyper_action");
  return config.hypermomentum * (R - R_start).norm();
}

double vv_hyper(const HyperConfig& config, double separation) {
  require(separation > 0.0, ErrorKind::Domain, "vv_hyper: separation must be positive");
  return config.eta * std::pow(config.hypermomentum / separation, 3 * config.n_particles());
}

double vv_hyper_time(const HyperConfig& config, double T) {
  require(T > 0.0, ErrorKind::Domain, "vv_hyper_time: T must be positive");
  return config.eta * std::pow(config.mu / T, 3 * config.n_particles());
}

double dT_dE_hyper(const HyperConfig& config, double separation) {
  require(separation > 0.0, ErrorKind::Domain, "dT_dE_hyper: separation must be positive");
  return -config.mu * config.mu * separation / std::pow(config.hypermomentum, 3);
}

double density_D_N(const HyperConfig& config, double separation) {
  if (!(separation > 0.0)) fail(ErrorKind::Singularity, "density_D_N: zero separation");
  const int N = config.n_particles();
  return config.eta * config.mu * config.mu / (separation * separation) *
         std::pow(config.hypermomentum / separation, 3 * (N - 1));
}

cplx green_hyper_asymptotic(const HyperConfig& config, const Vec& R, const Vec& R_start) {
  check_hyper_vector(config, R, "green_hyper_asymptotic");
  const double X = separation_of(R, R_start, "green_hyper_asymptotic");
  const double hbar = UnitSystem::hbar;
  const int N = config.n_particles();
  const double order = (3.0 * N - 1.0) / 2.0;
  // (2 pi i hbar)^(-order) on the principal branch
  const cplx pref = std::pow(kTwoPi * hbar, -order) * std::polar(1.0, -kPi * order / 2.0);
  const cplx i(0.0, 1.0);
  const double W = config.hypermomentum * X;
  return (1.0 / (i * hbar)) * pref * std::sqrt(density_D_N(config, X)) * std::polar(1.0, W / hbar);
}

cplx green_hyper_hankel(const HyperConfig& config, const Vec& R, const Vec& R_start) {
  check_hyper_vector(config, R, "green_hyper_hankel");
  const double X = separation_of(R, R_start, "green_hyper_hankel");
  const double hbar = UnitSystem::hbar;
  const double P = config.hypermomentum;
  const double a = config.alpha;
  const cplx H = special::hankel_h1(a, P * X / hbar);
  const cplx i(0.0, 1.0);
  return -i * (config.mu / (2.0 * hbar * hbar)) * std::pow(P / (kTwoPi * hbar * X), a) * H * std::sqrt(config.eta);
}

cplx n_particle_amplitude(cplx matrix_element, const HyperConfig& config) {
  const int N = config.n_particles();
  const double hbar = UnitSystem::hbar;
  const double k = 3.0 * (N - 1) / 2.0;
  // (i P')^k on the principal branch
  const cplx ip = std::pow(config.hypermomentum, k) * std::polar(1.0, kPi * k / 2.0);
  return -std::sqrt(kTwoPi / hbar) * config.mu * ip * matrix_element;
}

double f_squared_from_momentum_wfn_N(const HyperConfig& config, double separation, double momentum_density) {
  const int N = config.n_particles();
  return std::pow(config.hypermomentum, 3 * (N - 1)) * config.mu * config.mu * momentum_density /
         std::abs(dT_dE_hyper(config, separation));
}

double f_squared_reduced(cplx f, const HyperConfig& config) {
  const int N = config.n_particles();
  return std::norm(f) * std::pow(config.masses.front() / config.mu, (3.0 * N + 1.0) / 2.0);
}

void write_green_csv(std::ostream& os, std::span<const GreenEval> rows) {
  os << "R,E,re,im,form\n";
  os.precision(17);
  for (const GreenEval& g : rows)
    os << (g.r - g.r_start).norm() << ',' << g.E << ',' << g.value.real() << ',' << g.value.imag() << ','
       << to_string(g.form) << '\n';
}

}  // namespace itkit::scatter
