#pragma once

// Imaging-theorem maps between the momentum wavefunction at the edge of the
// reaction volume and macroscopic detector densities.

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "itkit/field.hpp"
#include "itkit/kernels.hpp"

namespace itkit::imaging {

/// Distances below this (bohr) are not macroscopic; they produce warnings.
inline constexpr double kMacroscopicRadius = 1e3;
/// apply_it_free warns when t sigma_p / (m sigma_x) falls below this.
inline constexpr double kAsymptoticRatio = 10.0;

/// Acceptance element r^2 dOmega dr around `position`, read out at `arrival_time`.
struct DetectorPatch {
  Vec position;
  double solid_angle = 0.0;
  double radial_extent = 0.0;
  double arrival_time = 0.0;

  /// Throws for non-positive dOmega or dr; returns warnings (|r| not macroscopic).
  std::vector<std::string> validate() const;
  /// r^2 dOmega dr in 3-D, dr in 1-D.
  double volume() const;
};

/// Pieces of the IT amplitude at one detector point.
struct ITResult {
  double position_density = 0.0;
  Vec momentum_point;
  double vv_factor = 0.0;
  double phase = 0.0;  // m r^2 / (2 hbar t)
};

struct ITField {
  ComplexField field;
  std::vector<std::string> warnings;
};

/// Kemble form Psi(r, t) = (m/(i t))^(d/2) exp(i m r^2/(2 hbar t)) Phi(m r/t),
/// with t measured from momentum_field.time. Phi is interpolated (cubic).
ITField apply_it_free(const ComplexField& momentum_field, double mass, double t, const Grid& r_grid,
                      Exec exec = Exec::Parallel);

/// Single-point version of apply_it_free.
ITResult it_point(const ComplexField& momentum_field, double mass, double t, const Vec& r);

/// (dp'/dr) |Phi(p')|^2
double it_density(double momentum_density, double vv_factor);

/// |Psi(r, t)|^2 r^2 dOmega dr (dr in 1-D), density interpolated at the patch.
double detection_probability(const ComplexField& position_field, const DetectorPatch& patch);

struct MomentumHit {
  Vec momentum;  // p' = m r / t
  double density = 0.0;
};

/// Inverse free IT: |Phi(m r/t)|^2 = (t/m)^d |Psi(r, t)|^2.
MomentumHit momentum_density_from_hits(double position_density, const Vec& r, double t, double mass);

/// Joint momentum wavefunction of N particles, each momentum a vector of the
/// particle's dimension.
using JointMomentumWfn = std::function<cplx(std::span<const Vec>)>;

/// prod_n (m_n/T_n)^d |Phi(p_1', ..., p_N')|^2 with p_n' = m_n r_n / T_n,
/// T_n = t_n - tau. Phi is never factorized.
double many_particle_it(const JointMomentumWfn& phi, std::span<const double> masses, std::span<const double> times,
                        std::span<const Vec> positions, double tau = 0.0);

/// Grid-sampled variant: the field's axes are the concatenated particle
/// coordinates, so its dimension must equal the summed particle dimensions.
double many_particle_it(const ComplexField& momentum_field, std::span<const double> masses,
                        std::span<const double> times, std::span<const Vec> positions);

/// Incident-channel amplitude (-i)^(d/2) (2 pi hbar)^(d/2) (dp_i/dr_i')^(1/2) Phi_i(p_i)
/// with dp_i/dr_i' = (m/t_i)^d.
cplx incident_amplitude(cplx phi_at_p, double mass, double t_i, int dimension = 3);

/// Same, with p_i = -m r_i / t_i looked up in a collimator momentum field.
cplx incident_amplitude(const ComplexField& collimator_field, double mass, double t_i, const Vec& r_i);

/// |Psi|^2 = it_density * P_i
double chained_density(double final_it_density, double incident_probability);

/// Columns: coordinates..., density.
void write_density_csv(std::ostream& os, const ComplexField& field);
/// Columns: r..., p..., position_density, vv_factor, phase.
void write_it_results_csv(std::ostream& os, std::span<const Vec> positions, std::span<const ITResult> results);

}  // namespace itkit::imaging
