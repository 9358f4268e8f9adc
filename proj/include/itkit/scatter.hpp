#pragma once

// Time-independent scattering: free and semiclassical Green functions, the
// N-particle hyperspherical forms, scattering amplitudes and cross sections.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "itkit/field.hpp"
#include "itkit/kernels.hpp"

namespace itkit::scatter {

enum class GreenForm { ExactFree, Semiclassical, HyperAsymptotic, HyperHankel };

const char* to_string(GreenForm form) noexcept;

struct GreenEval {
  Vec r;
  Vec r_start;
  double E = 0.0;
  cplx value;
  GreenForm form = GreenForm::ExactFree;
};

/// -(m / 2 pi hbar^2) exp(i p' R / hbar) / R
cplx green_free(const Vec& r, const Vec& r_start, double E, double mass);

/// (1/(i hbar)) (sqrt(D) / (2 pi i hbar)) exp(i W / hbar)
cplx green_semiclassical(double W, double D);

/// (p'/R)^d, the time-independent van Vleck factor of free motion.
double vv_time_independent(double p, double R, int dimension = 3);

/// (dp'/dr) |Phi(p', E)|^2
double ti_it_density(double momentum_density, double vv_factor);

/// |f|^2 = m^2 |dT/dE|^(-1) |Phi(p', E)|^2
double amplitude_from_momentum_wfn(double momentum_density, double E, double mass, double dT_dE);

/// Scattering amplitude for p_in -> p_out.
struct AmplitudeEval {
  enum class Source { Born, MomentumWavefunction };
  Vec p_out;
  Vec p_in;
  cplx f;
  Source source = Source::Born;
};

/// First Born amplitude f = -(m / 2 pi hbar^2) sum V(r) exp(i (p_in - p_out).r / hbar) dV
/// over a 3-D grid. Requires |p_out| = |p_in| (relative 1e-10) and a potential
/// that has decayed at the grid boundary.
AmplitudeEval born_amplitude(const Grid& grid, std::span<const double> potential, const Vec& p_in, const Vec& p_out,
                             double mass, Exec exec = Exec::Parallel);

double cross_section(cplx f);
double cross_section(const AmplitudeEval& amp);

/// dP = P_i (p_i/m) dt |f|^2 dOmega
double detection_probability_ti(cplx f, double incident_probability, double p_i, double mass, double dt,
                                double solid_angle);

/// Hyperspherical description of N particles with scaling mass mu.
struct HyperConfig {
  std::vector<double> masses;
  double mu = 1.0;
  std::vector<Vec> positions;
  double E = 0.0;
  double hyperradius = 0.0;     // R^2 = sum m_n r_n^2 / mu
  double hypermomentum = 0.0;   // P' = sqrt(2 mu E)
  double eta = 0.0;             // prod (m_n / mu)^3
  double alpha = 0.0;           // (3N - 2) / 2

  int n_particles() const { return static_cast<int>(masses.size()); }
};

HyperConfig hyper_config(std::span<const double> masses, std::span<const Vec> positions, double mu, double E);

/// Mass-weighted 3N vector (sqrt(m_1/mu) r_1, ..., sqrt(m_N/mu) r_N).
Vec hyper_vector(std::span<const double> masses, std::span<const Vec> positions, double mu);

/// T = sqrt(sum m_n R_n^2 / (2E)) for relative displacements R_n.
double characteristic_time_N(const HyperConfig& config, std::span<const Vec> displacements, double E);

/// W = P' |R - R'|
double hyper_action(const HyperConfig& config, const Vec& R, const Vec& R_start);

/// eta (P'/|R - R'|)^(3N)
double vv_hyper(const HyperConfig& config, double separation);
/// eta (mu/T)^(3N)
double vv_hyper_time(const HyperConfig& config, double T);

/// dT/dE = -mu^2 |R - R'| / P'^3
double dT_dE_hyper(const HyperConfig& config, double separation);

/// D = eta mu^2 / |R - R'|^2 (P'/|R - R'|)^(3(N-1))
double density_D_N(const HyperConfig& config, double separation);

/// (1/(i hbar)) (2 pi i hbar)^(-(3N-1)/2) sqrt(D) exp(i W / hbar)
cplx green_hyper_asymptotic(const HyperConfig& config, const Vec& R, const Vec& R_start);

/// -i (mu / 2 hbar^2) (P' / 2 pi hbar |R - R'|)^alpha H_alpha(P' |R - R'| / hbar) sqrt(eta)
cplx green_hyper_hankel(const HyperConfig& config, const Vec& R, const Vec& R_start);

/// f = -sqrt(2 pi / hbar) mu (i P')^(3(N-1)/2) <P'|V|Psi>
cplx n_particle_amplitude(cplx matrix_element, const HyperConfig& config);

/// |f|^2 = P'^(3(N-1)) mu^2 |dT/dE|^(-1) |Phi(P', E)|^2
double f_squared_from_momentum_wfn_N(const HyperConfig& config, double separation, double momentum_density);

/// |f|^2 carries mu^((3N+1)/2); this is |f|^2 referred to mu = m_1, the
/// mu-independent quantity reported to users (equal to |f|^2 at N = 1, mu = m).
double f_squared_reduced(cplx f, const HyperConfig& config);

/// Green-function scan rows; columns R,E,re,im,form.
void write_green_csv(std::ostream& os, std::span<const GreenEval> rows);

}  // namespace itkit::scatter
