#pragma once

#include "mvgcn/mapseg/grid.hpp"

namespace mvgcn::mapseg {

/// 3x3 full-block dilation, applied `iterations` times. Extensive: the output
/// always contains the input.
BinaryGrid dilate(const BinaryGrid& g, int iterations);

/// Zhang-Suen skeletonisation, iterated to its fixed point. Anti-extensive
/// and preserves the 8-connectivity of the road pixels.
BinaryGrid thin(const BinaryGrid& g);

}  // namespace mvgcn::mapseg
