#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace itkit {

using Vec = Eigen::VectorXd;

/// One uniformly sampled axis. `dual_origin` is the first sample of the
/// conjugate axis, so a position grid knows where its momentum grid starts and
/// vice versa; transforming twice returns exactly to the original samples.
struct Axis {
  std::size_t n = 0;
  double spacing = 0.0;
  double origin = 0.0;
  double dual_origin = 0.0;

  double coord(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
  double extent() const { return spacing * static_cast<double>(n); }
  double last() const { return coord(n - 1); }
  double dual_spacing() const;  // 2*pi*hbar / (n * spacing)
};

/// Uniform Cartesian grid in 1 or 3 dimensions, stored row-major with axis 0
/// varying slowest.
class Grid {
 public:
  explicit Grid(std::vector<Axis> axes);

  /// Grid with every axis identical, samples centred on `center` (i.e.
  /// origin = center - (n/2) * spacing) and the conjugate axis centred on zero.
  static Grid centered(int dimension, std::size_t n, double spacing, double center = 0.0);
  static Grid line(std::size_t n, double spacing, double origin, double dual_origin);

  int dimension() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }
  const std::vector<Axis>& axes() const { return axes_; }

  std::size_t size() const;
  double cell_volume() const;

  /// Grid of the conjugate variable: spacing 2*pi*hbar/(N*dx), origins swapped.
  Grid conjugate() const;

  std::array<std::size_t, 3> unravel(std::size_t flat) const;
  std::size_t ravel(const std::array<std::size_t, 3>& idx) const;
  Vec point(std::size_t flat) const;

  /// True when `x` lies inside the sampled box (first to last sample).
  bool contains(const Vec& x) const;

  /// True on the outermost layer of samples along any axis.
  bool on_boundary(std::size_t flat) const;

  bool same_layout(const Grid& other) const;

 private:
  std::vector<Axis> axes_;
};

}  // namespace itkit
