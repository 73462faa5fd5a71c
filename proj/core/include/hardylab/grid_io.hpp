#pragma once

#include <iosfwd>
#include <string>

#include "hardylab/grid.hpp"

namespace hardylab {

// CSV layout: one `axis<i>_breakpoints,...` row per axis, then one row per
// cell holding the index tuple, the real part and the imaginary part.
// Numbers are written with %.17g so round-trips are lossless.
void write_grid_csv(std::ostream& os, const GridFunction& f);
std::string grid_to_csv(const GridFunction& f);
GridFunction read_grid_csv(std::istream& is);
GridFunction grid_from_csv(const std::string& text);

void save_grid_csv(const std::string& path, const GridFunction& f);
GridFunction load_grid_csv(const std::string& path);

// Formats a double so that parsing it back yields the same bits.
std::string format_double(double v);

}  // namespace hardylab
