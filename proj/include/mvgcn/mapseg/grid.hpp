#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mvgcn::mapseg {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

/// Equirectangular bounding box. Row 0 of a grid is the northern edge
/// (max_lat); column 0 is the western edge (min_lon).
struct GeoBox {
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 1.0;
  double max_lon = 1.0;

  bool contains(const GeoPoint& p) const {
    return p.lat >= min_lat && p.lat <= max_lat && p.lon >= min_lon && p.lon <= max_lon;
  }
  bool degenerate() const { return max_lat <= min_lat || max_lon <= min_lon; }
};

/// H x W raster of {0,1} cells; 1 marks road pixels.
struct BinaryGrid {
  std::int64_t height = 0;
  std::int64_t width = 0;
  std::vector<std::uint8_t> cells;
  GeoBox bbox;

  static BinaryGrid blank(std::int64_t h, std::int64_t w, GeoBox box = {});

  std::uint8_t at(std::int64_t r, std::int64_t c) const {
    return cells[static_cast<std::size_t>(r * width + c)];
  }
  void set(std::int64_t r, std::int64_t c, std::uint8_t v) {
    cells[static_cast<std::size_t>(r * width + c)] = v;
  }
  bool in_bounds(std::int64_t r, std::int64_t c) const {
    return r >= 0 && r < height && c >= 0 && c < width;
  }
  std::int64_t count_ones() const;

  /// Cell containing a geographic point; boundary points clamp inward.
  std::pair<std::int64_t, std::int64_t> cell_of(const GeoPoint& p) const;
  /// Geographic center of a cell.
  GeoPoint center_of(std::int64_t r, std::int64_t c) const;
};

/// Marks every cell touched by integer line drawing between consecutive
/// polyline vertices. Vertices outside the box throw.
BinaryGrid rasterize_roads(const std::vector<std::vector<GeoPoint>>& polylines, GeoBox bbox,
                           std::int64_t height, std::int64_t width);

/// Great-circle distance in kilometers.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

}  // namespace mvgcn::mapseg
