#pragma once

// Classical mechanics of the asymptotic zone: Hamilton principal (S) and
// characteristic (W) functions, trajectories in free space and in a uniform
// field, stationary momenta, and the trajectory densities C = dp'/dr and
// D = -(dT/dE) C.

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "itkit/field.hpp"
#include "itkit/grid.hpp"

namespace itkit::classical {

/// A classical path (r', p', tau) -> (r, p, t). Without a field the motion is
/// free; with one it follows r = r' + p' T/m + F T^2/(2m), p = p' + F T.
struct Trajectory {
  Vec r_start;
  Vec p_start;
  double t_start = 0.0;
  Vec r_end;
  Vec p_end;
  double t_end = 0.0;
  std::optional<UniformField> field;
  double mass = 1.0;

  /// Closed-form forward integration from (r', p') over duration T > 0.
  static Trajectory launch(const Vec& r_start, const Vec& p_start, double t_start, double T, double mass,
                           std::optional<UniformField> field = std::nullopt);

  double duration() const { return t_end - t_start; }
  Vec force() const;
  /// p'^2/(2m) + V_F(r').
  double energy() const;
  /// Principal function S(r, t; r', tau).
  double action_S() const;
  /// Characteristic function W = integral of p . dl = integral of p^2/m dt.
  double action_W() const;
  /// Largest violation of the equations of motion (position and momentum).
  double equation_of_motion_residual() const;
};

/// Time-density C = dp'/dr, energy density D and dT/dE of a trajectory bundle.
struct DensityFactors {
  double C = 0.0;
  double D = 0.0;
  double dT_dE = 0.0;
};

double action_S_free(const Vec& r, const Vec& r_start, double T, double mass);
double action_S_tilde_free(const Vec& r, const Vec& p, double T, double mass);
double action_S_uniform(const Vec& r, const Vec& r_start, double T, double mass, const Vec& force);
/// Mixed action S~(r, t; p, tau) for the linear potential -F.r.
double action_S_tilde_uniform(const Vec& r, const Vec& p, double T, double mass, const Vec& force);

/// Initial momentum of the trajectory from r' to r in time T (unique for free
/// motion and uniform fields). A zero force gives the free result m (r - r')/T.
Vec stationary_momentum(const Vec& r, const Vec& r_start, double T, double mass, const Vec& force);
Vec stationary_momentum(const Vec& r, const Vec& r_start, double T, double mass);

/// Free van Vleck factor (m/T)^d, and the product over particles.
double van_vleck_time(double mass, double T, int dimension = 3);
double van_vleck_time(std::span<const double> masses, std::span<const double> times, int dimension = 3);

/// Family of classical paths parametrized by the launch momentum p'.
struct TrajectoryBundle {
  Vec p_center;
  std::function<Vec(const Vec&)> endpoint;  // p' -> final position r

  /// Paths from r' with duration T in an optional uniform field.
  static TrajectoryBundle fixed_time(const Vec& r_start, const Vec& p_center, double T, double mass,
                                     const Vec& force);
};

/// |det dp'/dr| from central differences of the bundle map with momentum
/// step `perturbation`. Singular Jacobians (conjugate points) raise a caustic
/// error; no Maslov phase is attached.
double van_vleck_numeric(const TrajectoryBundle& bundle, double perturbation);

double characteristic_action_W_free(const Vec& r, const Vec& r_start, double E, double mass);

struct TimeOfFlight {
  double T = 0.0;
  double dT_dE = 0.0;
};

TimeOfFlight time_of_flight_free(const Vec& r, const Vec& r_start, double E, double mass);

/// D = m^2 / R^2 for free motion.
double density_D_free(const Vec& r, const Vec& r_start, double mass);

/// Berry-Mount form D = m^2 (p'/p) dOmega_p'/dA_r.
double density_D_berry(double mass, double p_initial, double p_final, double dOmega_dA);

/// C, D and dT/dE of the free energy-E bundle, C evaluated at T = mR/p'.
DensityFactors density_factors_free(const Vec& r, const Vec& r_start, double E, double mass, int dimension = 3);

/// All energy-E paths from r' to r in the 1-D field V_F = -F x, sorted by time
/// of flight. Empty when the geometry is classically forbidden.
std::vector<Trajectory> enumerate_trajectories_uniform_1d(double r_start, double r, double E, double mass,
                                                          double force);

/// W(r, r'; E) along the branch with index `branch` (ordering of
/// enumerate_trajectories_uniform_1d). Throws when the branch does not exist.
double action_W_uniform_1d(double r, double r_start, double E, double mass, double force, std::size_t branch);

/// Columns r', p', tau, r, p, t, S, W, T (vector quantities expanded per axis).
void write_trajectories_csv(std::ostream& os, std::span<const Trajectory> trajectories);

}  // namespace itkit::classical
