#pragma once

#include <string>

#include "nsbl/field.hpp"
#include "nsbl/wholespace.hpp"

namespace nsbl {

// NSF1 field file: bytes 'N','S','F','1'; unsigned 32-bit little-endian n;
// 64-bit little-endian float L; then 3*n^3 64-bit little-endian floats,
// component-major, x-fastest row-major within a component.
void write_nsf1(const std::string& path, const VectorField& f);
VectorField read_nsf1(const std::string& path);

// Compact-field variant: one extra 64-bit header float after L holding the
// lattice half-extent R (so L = 2R and spacing = L/n). The support radius is
// not part of the format and must be supplied on read.
void write_nsf1_compact(const std::string& path, const CompactField& f);
CompactField read_nsf1_compact(const std::string& path, double support_radius);

}  // namespace nsbl
