#pragma once

#include <iosfwd>
#include <string>

#include "polsym/grid.hpp"

namespace polsym {

// Text grid format:
//
//   GF v1 dim=<d> shape=<n1,...,nd> h=<spacing>
//   <values, whitespace separated, row-major>
//
// Values are written with 17 significant digits so a write/read cycle is
// bit-exact.

void write_grid(std::ostream& out, const GridFunction& u);
GridFunction read_grid(std::istream& in);

void save_grid(const std::string& path, const GridFunction& u);
GridFunction load_grid(const std::string& path);

/// Parses "d,n1,...,nd,h" as used on the command line.
GridSpec parse_grid_spec(const std::string& text);

}  // namespace polsym
