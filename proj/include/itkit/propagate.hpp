#pragma once

// Exact grid evolution (free, uniform field, sampled short-range potential)
// and the semiclassical kernels with their stationary-phase evaluation.

#include <optional>
#include <vector>

#include "itkit/field.hpp"
#include "itkit/kernels.hpp"

namespace itkit::propagate {

using Mat = Eigen::MatrixXd;

/// H = p^2/2m - F.r + V(r) from t_start to t_end in n_steps Strang steps.
struct EvolutionSpec {
  double mass = 1.0;
  std::optional<UniformField> field;
  std::optional<std::vector<double>> potential;  // sampled on the position grid
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t n_steps = 1;

  double dt() const { return (t_end - t_start) / static_cast<double>(n_steps); }
  /// Throws on t_end <= t_start, n_steps == 0 or a potential of the wrong size.
  void validate(const Grid& grid) const;
};

/// Stability limit of the splitting: max|V| dt / hbar must stay below this.
inline constexpr double kMaxPhasePerStep = 0.1;

/// max over the grid of |V_F(r) + V(r)|.
double max_abs_potential(const EvolutionSpec& spec, const Grid& grid);

/// Smallest n_steps satisfying the stability limit for `spec` on `grid`.
std::size_t min_stable_steps(const EvolutionSpec& spec, const Grid& grid);

/// Multiplies the momentum representation by exp(-i p^2 T / (2 m hbar)).
/// Accepts either representation and returns the same one. Density reaching
/// the boundary after evolution raises a coverage error.
ComplexField evolve_free_exact(const ComplexField& field, double mass, double T, Exec exec = Exec::Parallel);

/// Strang splitting exp(-iV dt/2) exp(-iK dt) exp(-iV dt/2). Position
/// representation in and out.
ComplexField evolve_split_operator(const ComplexField& field, const EvolutionSpec& spec,
                                   Exec exec = Exec::Parallel);

/// Mixed action S~(r, t; p, tau) of free motion or a uniform field, with the
/// derivatives needed for the stationary-phase evaluation.
struct MixedAction {
  double mass = 1.0;
  Vec force;  // zero vector for free motion

  static MixedAction free(double mass, int dimension);
  static MixedAction uniform(double mass, const Vec& force);

  int dimension() const { return static_cast<int>(force.size()); }
  double operator()(const Vec& r, const Vec& p, double T) const;
  /// dS~/dp = r - p T/m - F T^2/(2m)
  Vec gradient_p(const Vec& r, const Vec& p, double T) const;
  /// d2S~/dp2 = -(T/m) I
  Mat hessian_pp(double T) const;
  /// d2S~/dr dp = I for every linear potential.
  Mat hessian_rp(double T) const;
  /// Solution of dS~/dp = 0 by Newton iteration (one step is exact here).
  Vec stationary_momentum(const Vec& r, double T) const;
};

/// (2 pi hbar)^(-d/2) |det d2S~/dr dp|^(1/2) exp(i S~/hbar), with T = t - tau > 0
/// (T = 0 gives the plane wave).
cplx kernel_mixed_semiclassical(const Vec& r, const Vec& p, double t, double tau, double mass,
                                const std::optional<UniformField>& field = std::nullopt);

/// [m/(2 pi i hbar T)]^(d/2) exp(i S(r, t; r', tau)/hbar); exact for free
/// motion and uniform fields.
cplx kernel_position_semiclassical(const Vec& r, const Vec& r_start, double t, double tau, double mass,
                                   const std::optional<UniformField>& field = std::nullopt);

/// Stationary-phase value of the integral of K(r, t; p, tau) Phi(p, tau) dp.
struct SpaPoint {
  cplx amplitude;
  Vec p_stationary;
  double vv_factor = 0.0;  // |dp'/dr|
  double action = 0.0;     // S~(r, p')
};

/// Throws a support error when p' leaves the momentum grid and a caustic error
/// when the momentum Hessian is singular. Phi is interpolated (cubic) at p'.
SpaPoint spa_integrate(const ComplexField& momentum_field, const MixedAction& action, const Vec& r, double t,
                       double tau);

/// spa_integrate at every point of `r_grid`; points whose stationary momentum
/// falls outside the momentum grid are set to zero.
ComplexField spa_propagate(const ComplexField& momentum_field, const MixedAction& action, const Grid& r_grid,
                           double t, double tau, Exec exec = Exec::Parallel);

}  // namespace itkit::propagate
