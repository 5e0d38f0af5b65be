#pragma once

#include "cstar/connectivity.hpp"
#include "cstar/degeneration.hpp"
#include "cstar/multidivisor.hpp"

#include <string>

namespace cstar {

// Slice-strip figures: each slice is a horizontal number line with vertex
// ticks, the boundary markers sit at the ends, diagram edges run between
// the two designated strips. Output is deterministic byte-for-byte.

std::string render_multidivisor(const Multidivisor& m);
std::string render_diagram(const DegenerationDiagram& d);
std::string render_path(const DeformationPath& p);

} // namespace cstar
