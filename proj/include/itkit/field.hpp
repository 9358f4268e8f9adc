#pragma once

#include <complex>
#include <vector>

#include "itkit/grid.hpp"

namespace itkit {

using cplx = std::complex<double>;

enum class Representation { Position = 0, Momentum = 1 };

const char* to_string(Representation rep) noexcept;

/// Complex amplitudes sampled on a uniform grid: Psi(r, t) in the position
/// representation or Phi(p, tau) in the momentum representation.
struct ComplexField {
  Grid grid;
  Representation representation = Representation::Position;
  std::vector<cplx> values;
  double time = 0.0;

  ComplexField(Grid g, Representation rep, double t = 0.0);
  ComplexField(Grid g, Representation rep, std::vector<cplx> v, double t = 0.0);

  int dimension() const { return grid.dimension(); }
  std::size_t size() const { return values.size(); }

  /// Discrete norm sum |psi|^2 * cell volume.
  double norm() const;
  std::vector<double> density() const;
};

/// Minimum-uncertainty packet: position width sigma_x = hbar / (2 sigma_p).
struct GaussianPacketSpec {
  Vec p0;
  Vec sigma_p;
  Vec r0;

  GaussianPacketSpec(Vec p0_, Vec sigma_p_, Vec r0_);
  static GaussianPacketSpec one_d(double p0, double sigma_p, double r0 = 0.0);

  int dimension() const { return static_cast<int>(p0.size()); }
  Vec sigma_x() const;
};

/// Constant force F; potential V_F(r) = -F . r.
struct UniformField {
  Vec force;
  explicit UniformField(Vec f);
  double potential(const Vec& r) const { return -force.dot(r); }
};

/// Fraction of the norm carried by the outermost layer of samples.
double boundary_fraction(const ComplexField& field);

/// Default boundary threshold used by transforms and evolutions.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Throws an aliasing error when boundary_fraction exceeds `tolerance`.
void check_boundary(const ComplexField& field, double tolerance, const char* context);

ComplexField normalize(const ComplexField& field);

/// Symmetric transform with (2 pi hbar)^(-d/2) per the plane-wave convention
/// exp(i p.r / hbar) / (2 pi hbar)^(d/2). The result lives on grid.conjugate().
ComplexField to_momentum(const ComplexField& field, double boundary_tolerance = kBoundaryTolerance);
ComplexField to_position(const ComplexField& field, double boundary_tolerance = kBoundaryTolerance);

/// Analytic, normalized packet sampled on `grid` in the requested representation.
/// The grid must cover the centre +- 6 sigma along every axis.
ComplexField sample_gaussian(const GaussianPacketSpec& spec, const Grid& grid, Representation rep);

/// Exact closed form of the packet used by sample_gaussian, at a single point.
cplx gaussian_amplitude(const GaussianPacketSpec& spec, const Vec& x, Representation rep);

/// <x_a> (or <p_a>) by quadrature, normalized by the field norm.
double expectation(const ComplexField& field, int axis);
double variance(const ComplexField& field, int axis);

/// Tensor-product 4-point cubic Lagrange interpolation. Queries outside the
/// sampled box return zero; near the edges the stencil is shifted inward.
cplx interpolate(const ComplexField& field, const Vec& x);

}  // namespace itkit
