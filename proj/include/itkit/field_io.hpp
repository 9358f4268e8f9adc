#pragma once

#include <iosfwd>
#include <string>

#include "itkit/field.hpp"

namespace itkit::io {

/// CSV with one row per sample: axis coordinates..., re, im.
/// Axis columns are named x,y,z (position) or px,py,pz (momentum).
void write_field_csv(std::ostream& os, const ComplexField& field);

/// Binary dump, little-endian:
///   uint32 dimension
///   uint32 n_points[dimension]
///   float64 spacing[dimension]
///   uint32 representation (0 position, 1 momentum)
///   float64 origin[dimension]
///   float64 dual_origin[dimension]
///   float64 time
///   float64 payload[2 * N]  (interleaved re, im; row-major, axis 0 slowest)
void write_field_binary(std::ostream& os, const ComplexField& field);
ComplexField read_field_binary(std::istream& is);

void save_field_binary(const std::string& path, const ComplexField& field);
ComplexField load_field_binary(const std::string& path);

}  // namespace itkit::io
