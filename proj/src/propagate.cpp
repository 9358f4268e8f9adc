#include "itkit/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fourier.hpp"
#include "itkit/classical.hpp"
#include "itkit/error.hpp"
#include "itkit/units.hpp"

namespace itkit::propagate {

namespace {

void mul(std::vector<cplx>& v, const std::vector<cplx>& f, Exec exec) {
  if (exec == Exec::Parallel)
    kernels::multiply(v, f);
  else
    kernels::serial::multiply(v, f);
}

void mul(std::span<cplx> v, const std::vector<cplx>& f, Exec exec) {
  if (exec == Exec::Parallel)
    kernels::multiply(v, f);
  else
    kernels::serial::multiply(v, f);
}

// exp(-i p^2 T / (2 m hbar)) over the momentum grid.
std::vector<cplx> kinetic_phase(const Grid& pgrid, double mass, double T) {
  std::vector<cplx> k(pgrid.size());
  const double c = -T / (2.0 * mass * UnitSystem::hbar);
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = std::polar(1.0, c * pgrid.point(i).squaredNorm());
  return k;
}

std::vector<double> total_potential(const EvolutionSpec& spec, const Grid& grid) {
  std::vector<double> v(grid.size(), 0.0);
  if (spec.potential) v = *spec.potential;
  if (spec.field)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += spec.field->potential(grid.point(i));
  return v;
}

void check_output_boundary(const ComplexField& out, const char* context) {
  const double frac = boundary_fraction(out);
  if (frac > kBoundaryTolerance)
    fail(ErrorKind::Coverage, std::string(context) + ": evolved density reaches the grid edge (fraction " +
                                  std::to_string(frac) + ")");
}

double signature_phase(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  int sgn = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) sgn += es.eigenvalues()[i] > 0.0 ? 1 : -1;
  return kPi * sgn / 4.0;
}

}  // namespace

void EvolutionSpec::validate(const Grid& grid) const {
  require(mass > 0.0, ErrorKind::Domain, "evolution: mass must be positive");
  require(t_end > t_start, ErrorKind::Domain, "evolution: t_end must exceed t_start");
  require(n_steps >= 1, ErrorKind::Domain, "evolution: n_steps must be at least 1");
  if (field)
    require(field->force.size() == grid.dimension(), ErrorKind::Shape, "evolution: force has wrong dimension");
  if (potential)
    require(potential->size() == grid.size(), ErrorKind::Shape, "evolution: potential does not match the grid");
}

double max_abs_potential(const EvolutionSpec& spec, const Grid& grid) {
  const std::vector<double> v = total_potential(spec, grid);
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::size_t min_stable_steps(const EvolutionSpec& spec, const Grid& grid) {
  const double span = spec.t_end - spec.t_start;
  const double vmax = max_abs_potential(spec, grid);
  if (vmax == 0.0) return 1;
  return static_cast<std::size_t>(std::floor(vmax * span / (kMaxPhasePerStep * UnitSystem::hbar))) + 1;
}

ComplexField evolve_free_exact(const ComplexField& field, double mass, double T, Exec exec) {
  require(T >= 0.0, ErrorKind::Domain, "evolve_free_exact: T must be non-negative");
  require(mass > 0.0, ErrorKind::Domain, "evolve_free_exact: mass must be positive");
  if (T == 0.0) return field;
  if (field.representation == Representation::Momentum) {
    ComplexField out = field;
    mul(out.values, kinetic_phase(out.grid, mass, T), exec);
    out.time += T;
    return out;
  }
  check_boundary(field, kBoundaryTolerance, "evolve_free_exact");
  detail::FourierTransformer ft(field.grid);
  ComplexField out = field;
  ft.forward(out.values);
  mul(out.values, kinetic_phase(ft.dual(), mass, T), exec);
  ft.backward(out.values);
  out.time += T;
  check_output_boundary(out, "evolve_free_exact");
  return out;
}

ComplexField evolve_split_operator(const ComplexField& field, const EvolutionSpec& spec, Exec exec) {
  require(field.representation == Representation::Position, ErrorKind::Representation,
          "evolve_split_operator expects a position-representation field");
  spec.validate(field.grid);
  check_boundary(field, kBoundaryTolerance, "evolve_split_operator");

  const double dt = spec.dt();
  const double hbar = UnitSystem::hbar;
  const std::vector<double> V = total_potential(spec, field.grid);
  double vmax = 0.0;
  for (double x : V) vmax = std::max(vmax, std::abs(x));
  if (vmax * dt / hbar >= kMaxPhasePerStep)
    fail(ErrorKind::Stability, "evolve_split_operator: max|V| dt / hbar = " + std::to_string(vmax * dt / hbar) +
                                   " exceeds " + std::to_string(kMaxPhasePerStep) + "; use at least " +
                                   std::to_string(min_stable_steps(spec, field.grid)) + " steps");

  detail::FourierTransformer ft(field.grid);
  const std::size_t n = field.size();
  const std::vector<cplx> K = kinetic_phase(ft.dual(), spec.mass, dt);

  // The transform's own diagonal factors are merged with the propagator
  // phases so that each step costs two FFTs and two multiplies.
  std::vector<cplx> first(n), inner_x(n), inner_p(n), last(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx half = std::polar(1.0, -V[i] * dt / (2.0 * hbar));
    const cplx full = half * half;
    first[i] = ft.forward_pre()[i] * half;
    inner_x[i] = ft.backward_post()[i] * ft.backward_scale() * full * ft.forward_pre()[i];
    inner_p[i] = ft.backward_pre()[i] * K[i] * ft.forward_post()[i] * ft.forward_scale();
    last[i] = ft.backward_post()[i] * ft.backward_scale() * half;
  }

  std::span<cplx> buf(ft.buffer(), n);
  std::copy(field.values.begin(), field.values.end(), buf.begin());
  mul(buf, first, exec);
  for (std::size_t step = 0; step < spec.n_steps; ++step) {
    ft.execute_forward();
    mul(buf, inner_p, exec);
    ft.execute_backward();
    mul(buf, step + 1 < spec.n_steps ? inner_x : last, exec);
  }

  ComplexField out(field.grid, Representation::Position, std::vector<cplx>(buf.begin(), buf.end()),
                   field.time + (spec.t_end - spec.t_start));
  check_output_boundary(out, "evolve_split_operator");
  return out;
}

MixedAction MixedAction::free(double mass, int dimension) {
  require(mass > 0.0, ErrorKind::Domain, "MixedAction: mass must be positive");
  require(dimension == 1 || dimension == 3, ErrorKind::Shape, "MixedAction: dimension must be 1 or 3");
  return MixedAction{mass, Vec::Zero(dimension)};
}

MixedAction MixedAction::uniform(double mass, const Vec& force) {
  require(mass > 0.0, ErrorKind::Domain, "MixedAction: mass must be positive");
  require(force.size() == 1 || force.size() == 3, ErrorKind::Shape, "MixedAction: dimension must be 1 or 3");
  return MixedAction{mass, force};
}

double MixedAction::operator()(const Vec& r, const Vec& p, double T) const {
  return classical::action_S_tilde_uniform(r, p, T, mass, force);
}

Vec MixedAction::gradient_p(const Vec& r, const Vec& p, double T) const {
  return r - p * (T / mass) - force * (T * T / (2.0 * mass));
}

Mat MixedAction::hessian_pp(double T) const { return Mat::Identity(dimension(), dimension()) * (-T / mass); }

Mat MixedAction::hessian_rp(double) const { return Mat::Identity(dimension(), dimension()); }

Vec MixedAction::stationary_momentum(const Vec& r, double T) const {
  require(T > 0.0, ErrorKind::Domain, "stationary momentum needs T > 0");
  const Mat H = hessian_pp(T);
  const Eigen::FullPivLU<Mat> lu(H);
  require(lu.isInvertible(), ErrorKind::Caustic, "singular momentum Hessian");
  Vec p = Vec::Zero(dimension());
  for (int it = 0; it < 8; ++it) {
    const Vec g = gradient_p(r, p, T);
    const Vec dp = lu.solve(g);
    p -= dp;
    if (dp.norm() <= 1e-15 * (1.0 + p.norm())) break;
  }
  return p;
}

cplx kernel_mixed_semiclassical(const Vec& r, const Vec& p, double t, double tau, double mass,
                                const std::optional<UniformField>& field) {
  const double T = t - tau;
  require(T >= 0.0, ErrorKind::Domain, "kernel_mixed_semiclassical: t must not precede tau");
  require(r.size() == p.size(), ErrorKind::Shape, "kernel_mixed_semiclassical: r and p differ in dimension");
  const int d = static_cast<int>(r.size());
  const MixedAction S = field ? MixedAction::uniform(mass, field->force) : MixedAction::free(mass, d);
  const double det = std::abs(S.hessian_rp(T).determinant());
  const double hbar = UnitSystem::hbar;
  return std::pow(kTwoPi * hbar, -0.5 * d) * std::sqrt(det) * std::polar(1.0, S(r, p, T) / hbar);
}

cplx kernel_position_semiclassical(const Vec& r, const Vec& r_start, double t, double tau, double mass,
                                   const std::optional<UniformField>& field) {
  const double T = t - tau;
  require(T > 0.0, ErrorKind::Domain, "kernel_position_semiclassical: T must be positive");
  require(r.size() == r_start.size(), ErrorKind::Shape, "kernel_position_semiclassical: dimension mismatch");
  const int d = static_cast<int>(r.size());
  const double hbar = UnitSystem::hbar;
  const Vec F = field ? field->force : Vec::Zero(d);
  const double S = classical::action_S_uniform(r, r_start, T, mass, F);
  const cplx pref = std::pow(mass / (kTwoPi * hbar * T), 0.5 * d) * std::polar(1.0, -kPi * d / 4.0);
  return pref * std::polar(1.0, S / hbar);
}

SpaPoint spa_integrate(const ComplexField& momentum_field, const MixedAction& action, const Vec& r, double t,
                       double tau) {
  require(momentum_field.representation == Representation::Momentum, ErrorKind::Representation,
          "spa_integrate expects a momentum-representation field");
  require(r.size() == momentum_field.dimension() && action.dimension() == momentum_field.dimension(),
          ErrorKind::Shape, "spa_integrate: dimension mismatch");
  const double T = t - tau;
  require(T > 0.0, ErrorKind::Domain, "spa_integrate: t must exceed tau");

  const Mat Hpp = action.hessian_pp(T);
  const double det_pp = Hpp.determinant();
  if (!(std::abs(det_pp) > 0.0) || !std::isfinite(det_pp))
    fail(ErrorKind::Caustic, "spa_integrate: degenerate momentum Hessian");
  const Vec p = action.stationary_momentum(r, T);
  if (!momentum_field.grid.contains(p))
    fail(ErrorKind::Support, "spa_integrate: stationary momentum lies outside the momentum grid");

  const double hbar = UnitSystem::hbar;
  SpaPoint out;
  out.p_stationary = p;
  out.vv_factor = std::abs(action.hessian_rp(T).determinant() / det_pp);
  out.action = action(r, p, T);
  // The kernel's (2 pi hbar)^(-d/2) cancels against the Gaussian integral.
  out.amplitude = std::sqrt(out.vv_factor) * std::polar(1.0, signature_phase(Hpp) + out.action / hbar) *
                  interpolate(momentum_field, p);
  return out;
}

ComplexField spa_propagate(const ComplexField& momentum_field, const MixedAction& action, const Grid& r_grid,
                           double t, double tau, Exec exec) {
  require(momentum_field.representation == Representation::Momentum, ErrorKind::Representation,
          "spa_propagate expects a momentum-representation field");
  require(r_grid.dimension() == momentum_field.dimension() && action.dimension() == r_grid.dimension(),
          ErrorKind::Shape, "spa_propagate: dimension mismatch");
  const double T = t - tau;
  require(T > 0.0, ErrorKind::Domain, "spa_propagate: t must exceed tau");
  const Mat Hpp = action.hessian_pp(T);
  const double det_pp = Hpp.determinant();
  if (!(std::abs(det_pp) > 0.0)) fail(ErrorKind::Caustic, "spa_propagate: degenerate momentum Hessian");
  const double vv = std::abs(action.hessian_rp(T).determinant() / det_pp);
  const cplx pref = std::sqrt(vv) * std::polar(1.0, signature_phase(Hpp));
  const double hbar = UnitSystem::hbar;

  ComplexField out(r_grid, Representation::Position, momentum_field.time + T);
  const auto n = static_cast<std::ptrdiff_t>(r_grid.size());
  auto point = [&](std::ptrdiff_t i) {
    const Vec r = r_grid.point(static_cast<std::size_t>(i));
    // Uniform fields and free motion share the closed-form stationary point.
    const Vec p = (r - action.force * (T * T / (2.0 * action.mass))) * (action.mass / T);
    if (!momentum_field.grid.contains(p)) return cplx(0.0, 0.0);
    return pref * std::polar(1.0, action(r, p, T) / hbar) * interpolate(momentum_field, p);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = point(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = point(i);
  }
  return out;
}

}  // namespace itkit::propagate
