#include "itkit/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fourier.hpp"
#include "itkit/error.hpp"
#include "itkit/kernels.hpp"
#include "itkit/units.hpp"

namespace itkit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Representation: return "representation error";
    case ErrorKind::Aliasing: return "aliasing error";
    case ErrorKind::Coverage: return "coverage error";
    case ErrorKind::Degenerate: return "degenerate input";
    case ErrorKind::Caustic: return "caustic";
    case ErrorKind::Support: return "support error";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Stability: return "stability error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Numerical: return "numerical failure";
    case ErrorKind::Fit: return "fit error";
    case ErrorKind::Config: return "config error";
  }
  return "error";
}

const char* to_string(Representation rep) noexcept {
  return rep == Representation::Position ? "position" : "momentum";
}

ComplexField::ComplexField(Grid g, Representation rep, double t)
    : grid(std::move(g)), representation(rep), values(grid.size(), cplx(0.0, 0.0)), time(t) {}

ComplexField::ComplexField(Grid g, Representation rep, std::vector<cplx> v, double t)
    : grid(std::move(g)), representation(rep), values(std::move(v)), time(t) {
  require(values.size() == grid.size(), ErrorKind::Shape, "field value count does not match grid");
}

double ComplexField::norm() const { return kernels::squared_norm(values) * grid.cell_volume(); }

std::vector<double> ComplexField::density() const {
  std::vector<double> d(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) d[i] = std::norm(values[i]);
  return d;
}

GaussianPacketSpec::GaussianPacketSpec(Vec p0_, Vec sigma_p_, Vec r0_)
    : p0(std::move(p0_)), sigma_p(std::move(sigma_p_)), r0(std::move(r0_)) {
  require(p0.size() == sigma_p.size() && p0.size() == r0.size(), ErrorKind::Shape,
          "Gaussian packet vectors must share one dimension");
  require(p0.size() == 1 || p0.size() == 3, ErrorKind::Shape, "Gaussian packet dimension must be 1 or 3");
  for (Eigen::Index a = 0; a < sigma_p.size(); ++a)
    require(sigma_p[a] > 0.0, ErrorKind::Domain, "sigma_p must be positive");
}

GaussianPacketSpec GaussianPacketSpec::one_d(double p0, double sigma_p, double r0) {
  return GaussianPacketSpec(Vec::Constant(1, p0), Vec::Constant(1, sigma_p), Vec::Constant(1, r0));
}

Vec GaussianPacketSpec::sigma_x() const { return (UnitSystem::hbar / 2.0) * sigma_p.cwiseInverse(); }

UniformField::UniformField(Vec f) : force(std::move(f)) {
  require(force.allFinite(), ErrorKind::Domain, "uniform field must be finite");
}

double boundary_fraction(const ComplexField& field) {
  double edge = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double d = std::norm(field.values[i]);
    total += d;
    if (field.grid.on_boundary(i)) edge += d;
  }
  return total > 0.0 ? edge / total : 0.0;
}

void check_boundary(const ComplexField& field, double tolerance, const char* context) {
  const double frac = boundary_fraction(field);
  if (frac > tolerance)
    fail(ErrorKind::Aliasing, std::string(context) + ": boundary carries " + std::to_string(frac) +
                                  " of the norm (limit " + std::to_string(tolerance) + ")");
}

ComplexField normalize(const ComplexField& field) {
  const double n = field.norm();
  require(n > 0.0 && std::isfinite(n), ErrorKind::Degenerate, "cannot normalize a zero field");
  ComplexField out = field;
  const double s = 1.0 / std::sqrt(n);
  for (cplx& v : out.values) v *= s;
  return out;
}

ComplexField to_momentum(const ComplexField& field, double boundary_tolerance) {
  require(field.representation == Representation::Position, ErrorKind::Representation,
          "to_momentum expects a position-representation field");
  check_boundary(field, boundary_tolerance, "to_momentum");
  std::vector<cplx> v = field.values;
  detail::FourierTransformer(field.grid).forward(v);
  return ComplexField(field.grid.conjugate(), Representation::Momentum, std::move(v), field.time);
}

ComplexField to_position(const ComplexField& field, double boundary_tolerance) {
  require(field.representation == Representation::Momentum, ErrorKind::Representation,
          "to_position expects a momentum-representation field");
  check_boundary(field, boundary_tolerance, "to_position");
  const Grid position_grid = field.grid.conjugate();
  std::vector<cplx> v = field.values;
  detail::FourierTransformer(position_grid).backward(v);
  return ComplexField(position_grid, Representation::Position, std::move(v), field.time);
}

cplx gaussian_amplitude(const GaussianPacketSpec& spec, const Vec& x, Representation rep) {
  const double hbar = UnitSystem::hbar;
  double log_mod = 0.0;
  double phase = 0.0;
  for (int a = 0; a < spec.dimension(); ++a) {
    const double sp = spec.sigma_p[a];
    if (rep == Representation::Momentum) {
      const double d = x[a] - spec.p0[a];
      log_mod += -0.25 * std::log(kTwoPi * sp * sp) - d * d / (4.0 * sp * sp);
      phase += -d * spec.r0[a] / hbar;
    } else {
      const double sx = hbar / (2.0 * sp);
      const double d = x[a] - spec.r0[a];
      log_mod += -0.25 * std::log(kTwoPi * sx * sx) - d * d / (4.0 * sx * sx);
      phase += spec.p0[a] * x[a] / hbar;
    }
  }
  return std::polar(std::exp(log_mod), phase);
}

ComplexField sample_gaussian(const GaussianPacketSpec& spec, const Grid& grid, Representation rep) {
  require(spec.dimension() == grid.dimension(), ErrorKind::Shape, "packet and grid dimensions differ");
  const Vec sx = spec.sigma_x();
  for (int a = 0; a < grid.dimension(); ++a) {
    const Axis& ax = grid.axis(a);
    const double c = rep == Representation::Momentum ? spec.p0[a] : spec.r0[a];
    const double w = rep == Representation::Momentum ? spec.sigma_p[a] : sx[a];
    if (c - 6.0 * w < ax.origin || c + 6.0 * w > ax.last())
      fail(ErrorKind::Coverage, "sample_gaussian: grid axis " + std::to_string(a) +
                                    " does not cover the packet centre +- 6 sigma");
  }
  ComplexField f(grid, rep);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = gaussian_amplitude(spec, grid.point(i), rep);
  return normalize(f);
}

double expectation(const ComplexField& field, int axis) {
  require(axis >= 0 && axis < field.dimension(), ErrorKind::Shape, "expectation: bad axis");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double d = std::norm(field.values[i]);
    const auto idx = field.grid.unravel(i);
    num += d * field.grid.axis(axis).coord(idx[static_cast<std::size_t>(axis)]);
    den += d;
  }
  require(den > 0.0, ErrorKind::Degenerate, "expectation of a zero field");
  return num / den;
}

double variance(const ComplexField& field, int axis) {
  const double mean = expectation(field, axis);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double d = std::norm(field.values[i]);
    const auto idx = field.grid.unravel(i);
    const double x = field.grid.axis(axis).coord(idx[static_cast<std::size_t>(axis)]) - mean;
    num += d * x * x;
    den += d;
  }
  return num / den;
}

namespace {

struct Stencil {
  std::size_t start = 0;
  std::array<double, 4> w{};
};

// 4-point Lagrange weights around x; false when x is outside the axis.
bool cubic_stencil(const Axis& ax, double x, Stencil& st) {
  if (x < ax.origin || x > ax.last()) return false;
  const double u = (x - ax.origin) / ax.spacing;
  auto base = static_cast<std::ptrdiff_t>(std::floor(u)) - 1;
  base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(ax.n) - 4);
  st.start = static_cast<std::size_t>(base);
  const double t = u - static_cast<double>(base);  // position relative to node `base`
  for (int k = 0; k < 4; ++k) {
    double w = 1.0;
    for (int m = 0; m < 4; ++m)
      if (m != k) w *= (t - m) / static_cast<double>(k - m);
    st.w[static_cast<std::size_t>(k)] = w;
  }
  return true;
}

}  // namespace

cplx interpolate(const ComplexField& field, const Vec& x) {
  const Grid& g = field.grid;
  require(x.size() == g.dimension(), ErrorKind::Shape, "interpolate: point has wrong dimension");
  std::array<Stencil, 3> st{};
  for (int a = 0; a < g.dimension(); ++a)
    if (!cubic_stencil(g.axis(a), x[a], st[static_cast<std::size_t>(a)])) return {0.0, 0.0};
  if (g.dimension() == 1) {
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < 4; ++k) acc += st[0].w[k] * field.values[st[0].start + k];
    return acc;
  }
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t flat = g.ravel({st[0].start + i, st[1].start + j, st[2].start + k});
        acc += st[0].w[i] * st[1].w[j] * st[2].w[k] * field.values[flat];
      }
  return acc;
}

}  // namespace itkit
