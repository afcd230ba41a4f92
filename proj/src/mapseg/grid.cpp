#include "mvgcn/mapseg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvgcn::mapseg {

BinaryGrid BinaryGrid::blank(std::int64_t h, std::int64_t w, GeoBox box) {
  if (h < 1 || w < 1) throw std::invalid_argument("grid dims must be positive");
  BinaryGrid g;
  g.height = h;
  g.width = w;
  g.cells.assign(static_cast<std::size_t>(h * w), 0);
  g.bbox = box;
  return g;
}

std::int64_t BinaryGrid::count_ones() const {
  std::int64_t n = 0;
  for (auto c : cells) n += c;
  return n;
}

std::pair<std::int64_t, std::int64_t> BinaryGrid::cell_of(const GeoPoint& p) const {
  const double cell_h = (bbox.max_lat - bbox.min_lat) / static_cast<double>(height);
  const double cell_w = (bbox.max_lon - bbox.min_lon) / static_cast<double>(width);
  auto r = static_cast<std::int64_t>(std::floor((bbox.max_lat - p.lat) / cell_h));
  auto c = static_cast<std::int64_t>(std::floor((p.lon - bbox.min_lon) / cell_w));
  r = std::clamp<std::int64_t>(r, 0, height - 1);
  c = std::clamp<std::int64_t>(c, 0, width - 1);
  return {r, c};
}

GeoPoint BinaryGrid::center_of(std::int64_t r, std::int64_t c) const {
  const double cell_h = (bbox.max_lat - bbox.min_lat) / static_cast<double>(height);
  const double cell_w = (bbox.max_lon - bbox.min_lon) / static_cast<double>(width);
  return {bbox.max_lat - (static_cast<double>(r) + 0.5) * cell_h,
          bbox.min_lon + (static_cast<double>(c) + 0.5) * cell_w};
}

BinaryGrid rasterize_roads(const std::vector<std::vector<GeoPoint>>& polylines, GeoBox bbox,
                           std::int64_t height, std::int64_t width) {
  if (bbox.degenerate()) throw std::invalid_argument("rasterize: degenerate bbox");
  if (height < 2 || width < 2) throw std::invalid_argument("rasterize: dims must be at least 2x2");
  BinaryGrid g = BinaryGrid::blank(height, width, bbox);

  auto draw = [&](std::int64_t r0, std::int64_t c0, std::int64_t r1, std::int64_t c1) {
    // Bresenham over cell coordinates, all octants; columns play x, rows y.
    const std::int64_t dc = std::abs(c1 - c0), dr = -std::abs(r1 - r0);
    const std::int64_t sc = c0 < c1 ? 1 : -1, sr = r0 < r1 ? 1 : -1;
    std::int64_t err = dc + dr;
    std::int64_t r = r0, c = c0;
    while (true) {
      g.set(r, c, 1);
      if (r == r1 && c == c1) break;
      const std::int64_t e2 = 2 * err;
      if (e2 >= dr) {
        err += dr;
        c += sc;
      }
      if (e2 <= dc) {
        err += dc;
        r += sr;
      }
    }
  };

  for (const auto& line : polylines) {
    for (const auto& v : line)
      if (!bbox.contains(v)) throw std::invalid_argument("rasterize: polyline vertex outside bbox");
    if (line.size() == 1) {
      const auto [r, c] = g.cell_of(line[0]);
      g.set(r, c, 1);
    }
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      const auto [r0, c0] = g.cell_of(line[i]);
      const auto [r1, c1] = g.cell_of(line[i + 1]);
      draw(r0, c0, r1, c1);
    }
  }
  return g;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  constexpr double kEarthRadiusKm = 6371.0088;
  const double to_rad = M_PI / 180.0;
  const double dlat = (b.lat - a.lat) * to_rad;
  const double dlon = (b.lon - a.lon) * to_rad;
  const double s1 = std::sin(dlat / 2.0), s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(a.lat * to_rad) * std::cos(b.lat * to_rad) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace mvgcn::mapseg
