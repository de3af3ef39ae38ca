#pragma once
#include "core/grid.hpp"

#include <string>

namespace dwl::grid {

// Field snapshot file, little-endian binary:
//   bytes 0..3   magic "DWL1"
//   bytes 4..7   M (uint32)
//   bytes 8..15  L (float64)
//   bytes 16..19 component count (uint32, 1 or 4)
// followed by complex doubles (re,im), components interleaved per point,
// points in row-major x,y,z order.
void save_snapshot(const Field& f, const std::string& path);
Field load_snapshot(const std::string& path);

} // namespace dwl::grid
