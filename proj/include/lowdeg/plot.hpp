#pragma once

#include <string>
#include <vector>

#include "lowdeg/experiments.hpp"

namespace lowdeg {

// Success rate against d, one polyline per p, with dashed markers at d_lower,
// p/2 and d_upper. Standalone SVG 1.1, viewBox 0 0 800 500.
std::string emit_svg(const std::vector<SweepRow>& rows);

}  // namespace lowdeg
