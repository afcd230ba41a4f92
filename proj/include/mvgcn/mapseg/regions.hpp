#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mvgcn/mapseg/grid.hpp"

namespace mvgcn::mapseg {

using Cell = std::pair<std::int32_t, std::int32_t>;  // (row, col)

struct Region {
  std::int32_t id = 0;
  std::vector<Cell> cells;
  GeoPoint centroid;

  std::int64_t cell_count() const { return static_cast<std::int64_t>(cells.size()); }
};

struct RegionSet {
  std::vector<Region> regions;
  GeoBox bbox;
  std::int64_t grid_height = 0;
  std::int64_t grid_width = 0;

  std::int64_t count() const { return static_cast<std::int64_t>(regions.size()); }

  /// Row-major lookup raster: cell -> region id, -1 for road cells.
  std::vector<std::int32_t> label_grid() const;
  /// Region containing a geographic point, or -1.
  std::int32_t region_of(const GeoPoint& p, const std::vector<std::int32_t>& labels) const;
};

/// Partitions the blank (0) cells of a raster into maximal 4-connected
/// components. Labels follow scan order of each component's first cell. A
/// grid with no blank cells yields an empty set.
RegionSet label_regions(const BinaryGrid& g);

/// Point-like regions (bike stations and similar), one per position.
RegionSet station_regions(const std::vector<GeoPoint>& positions);

}  // namespace mvgcn::mapseg
