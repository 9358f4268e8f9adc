#include "itkit/grid.hpp"

#include <cmath>
#include <string>

#include "itkit/error.hpp"
#include "itkit/units.hpp"

namespace itkit {

double Axis::dual_spacing() const {
  return kTwoPi * UnitSystem::hbar / (static_cast<double>(n) * spacing);
}

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  require(axes_.size() == 1 || axes_.size() == 3, ErrorKind::Shape,
          "grid dimension must be 1 or 3, got " + std::to_string(axes_.size()));
  for (const Axis& a : axes_) {
    require(a.n >= 8, ErrorKind::Shape, "grid needs at least 8 points per axis");
    require(a.spacing > 0.0 && std::isfinite(a.spacing), ErrorKind::Domain,
            "grid spacing must be positive and finite");
    require(std::isfinite(a.origin) && std::isfinite(a.dual_origin), ErrorKind::Domain,
            "grid origin must be finite");
  }
}

Grid Grid::centered(int dimension, std::size_t n, double spacing, double center) {
  require(dimension == 1 || dimension == 3, ErrorKind::Shape, "grid dimension must be 1 or 3");
  Axis a;
  a.n = n;
  a.spacing = spacing;
  a.origin = center - static_cast<double>(n / 2) * spacing;
  a.dual_origin = -static_cast<double>(n / 2) * a.dual_spacing();
  return Grid(std::vector<Axis>(static_cast<std::size_t>(dimension), a));
}

Grid Grid::line(std::size_t n, double spacing, double origin, double dual_origin) {
  return Grid({Axis{n, spacing, origin, dual_origin}});
}

std::size_t Grid::size() const {
  std::size_t total = 1;
  for (const Axis& a : axes_) total *= a.n;
  return total;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (const Axis& a : axes_) v *= a.spacing;
  return v;
}

Grid Grid::conjugate() const {
  std::vector<Axis> dual;
  dual.reserve(axes_.size());
  for (const Axis& a : axes_) dual.push_back(Axis{a.n, a.dual_spacing(), a.dual_origin, a.origin});
  return Grid(std::move(dual));
}

std::array<std::size_t, 3> Grid::unravel(std::size_t flat) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int a = dimension() - 1; a >= 0; --a) {
    const std::size_t n = axes_[static_cast<std::size_t>(a)].n;
    idx[static_cast<std::size_t>(a)] = flat % n;
    flat /= n;
  }
  return idx;
}

std::size_t Grid::ravel(const std::array<std::size_t, 3>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dimension(); ++a) flat = flat * axes_[static_cast<std::size_t>(a)].n + idx[static_cast<std::size_t>(a)];
  return flat;
}

Vec Grid::point(std::size_t flat) const {
  const auto idx = unravel(flat);
  Vec x(dimension());
  for (int a = 0; a < dimension(); ++a) x[a] = axes_[static_cast<std::size_t>(a)].coord(idx[static_cast<std::size_t>(a)]);
  return x;
}

bool Grid::contains(const Vec& x) const {
  if (x.size() != dimension()) return false;
  for (int a = 0; a < dimension(); ++a) {
    const Axis& ax = axes_[static_cast<std::size_t>(a)];
    if (x[a] < ax.origin || x[a] > ax.last()) return false;
  }
  return true;
}

bool Grid::on_boundary(std::size_t flat) const {
  const auto idx = unravel(flat);
  for (int a = 0; a < dimension(); ++a) {
    const std::size_t i = idx[static_cast<std::size_t>(a)];
    if (i == 0 || i + 1 == axes_[static_cast<std::size_t>(a)].n) return true;
  }
  return false;
}

bool Grid::same_layout(const Grid& other) const {
  if (other.dimension() != dimension()) return false;
  for (int a = 0; a < dimension(); ++a) {
    const Axis& x = axes_[static_cast<std::size_t>(a)];
    const Axis& y = other.axes_[static_cast<std::size_t>(a)];
    if (x.n != y.n || x.spacing != y.spacing || x.origin != y.origin) return false;
  }
  return true;
}

}  // namespace itkit
