#include "itkit/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "itkit/error.hpp"

namespace itkit::io {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

template <typename T>
void put(std::ostream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  require(static_cast<bool>(is), ErrorKind::Shape, "truncated binary field");
  return to_little(v);
}

}  // namespace

void write_field_csv(std::ostream& os, const ComplexField& field) {
  static const char* pos_names[] = {"x", "y", "z"};
  static const char* mom_names[] = {"px", "py", "pz"};
  const bool mom = field.representation == Representation::Momentum;
  for (int a = 0; a < field.dimension(); ++a) os << (mom ? mom_names[a] : pos_names[a]) << ',';
  os << "re,im\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const Vec x = field.grid.point(i);
    for (int a = 0; a < field.dimension(); ++a) os << x[a] << ',';
    os << field.values[i].real() << ',' << field.values[i].imag() << '\n';
  }
}

void write_field_binary(std::ostream& os, const ComplexField& field) {
  const int d = field.dimension();
  put<std::uint32_t>(os, static_cast<std::uint32_t>(d));
  for (int a = 0; a < d; ++a) put<std::uint32_t>(os, static_cast<std::uint32_t>(field.grid.axis(a).n));
  for (int a = 0; a < d; ++a) put<double>(os, field.grid.axis(a).spacing);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(field.representation));
  for (int a = 0; a < d; ++a) put<double>(os, field.grid.axis(a).origin);
  for (int a = 0; a < d; ++a) put<double>(os, field.grid.axis(a).dual_origin);
  put<double>(os, field.time);
  for (const cplx& v : field.values) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
}

ComplexField read_field_binary(std::istream& is) {
  const auto d = get<std::uint32_t>(is);
  require(d == 1 || d == 3, ErrorKind::Shape, "binary field: dimension must be 1 or 3");
  std::vector<Axis> axes(d);
  for (auto& a : axes) a.n = get<std::uint32_t>(is);
  for (auto& a : axes) a.spacing = get<double>(is);
  const auto rep = get<std::uint32_t>(is);
  require(rep <= 1, ErrorKind::Representation, "binary field: unknown representation tag");
  for (auto& a : axes) a.origin = get<double>(is);
  for (auto& a : axes) a.dual_origin = get<double>(is);
  const double time = get<double>(is);
  Grid grid(std::move(axes));
  std::vector<cplx> values(grid.size());
  for (cplx& v : values) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    v = cplx(re, im);
  }
  return ComplexField(std::move(grid), static_cast<Representation>(rep), std::move(values), time);
}

void save_field_binary(const std::string& path, const ComplexField& field) {
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorKind::Config, "cannot open " + path + " for writing");
  write_field_binary(os, field);
}

ComplexField load_field_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), ErrorKind::Config, "cannot open " + path);
  return read_field_binary(is);
}

}  // namespace itkit::io
