#include "mvgcn/mapseg/regions.hpp"

#include <numeric>
#include <stdexcept>

namespace mvgcn::mapseg {

std::vector<std::int32_t> RegionSet::label_grid() const {
  std::vector<std::int32_t> labels(static_cast<std::size_t>(grid_height * grid_width), -1);
  for (const auto& region : regions)
    for (const auto& [r, c] : region.cells)
      labels[static_cast<std::size_t>(static_cast<std::int64_t>(r) * grid_width + c)] = region.id;
  return labels;
}

std::int32_t RegionSet::region_of(const GeoPoint& p, const std::vector<std::int32_t>& labels) const {
  if (!bbox.contains(p)) return -1;
  BinaryGrid probe;
  probe.height = grid_height;
  probe.width = grid_width;
  probe.bbox = bbox;
  const auto [r, c] = probe.cell_of(p);
  return labels[static_cast<std::size_t>(r * grid_width + c)];
}

RegionSet label_regions(const BinaryGrid& g) {
  const std::int64_t h = g.height, w = g.width;
  const std::int64_t n = h * w;

  // Two-pass labeling with union-find over provisional row labels.
  std::vector<std::int32_t> provisional(static_cast<std::size_t>(n), -1);
  std::vector<std::int32_t> parent;
  auto find = [&](std::int32_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };

  for (std::int64_t r = 0; r < h; ++r) {
    for (std::int64_t c = 0; c < w; ++c) {
      if (g.at(r, c)) continue;  // road cell
      const std::int64_t idx = r * w + c;
      const std::int32_t up = r > 0 && !g.at(r - 1, c) ? provisional[static_cast<std::size_t>(idx - w)] : -1;
      const std::int32_t left = c > 0 && !g.at(r, c - 1) ? provisional[static_cast<std::size_t>(idx - 1)] : -1;
      if (up < 0 && left < 0) {
        const auto fresh = static_cast<std::int32_t>(parent.size());
        parent.push_back(fresh);
        provisional[static_cast<std::size_t>(idx)] = fresh;
      } else if (up >= 0 && left >= 0) {
        provisional[static_cast<std::size_t>(idx)] = std::min(find(up), find(left));
        unite(up, left);
      } else {
        provisional[static_cast<std::size_t>(idx)] = up >= 0 ? up : left;
      }
    }
  }

  // Second pass: resolve roots and relabel in scan order of first occurrence.
  std::vector<std::int32_t> root_to_label(parent.size(), -1);
  std::int32_t next_label = 0;
  RegionSet rs;
  rs.bbox = g.bbox;
  rs.grid_height = h;
  rs.grid_width = w;
  for (std::int64_t idx = 0; idx < n; ++idx) {
    const std::int32_t prov = provisional[static_cast<std::size_t>(idx)];
    if (prov < 0) continue;
    const std::int32_t root = find(prov);
    std::int32_t& label = root_to_label[static_cast<std::size_t>(root)];
    if (label < 0) {
      label = next_label++;
      Region region;
      region.id = label;
      rs.regions.push_back(std::move(region));
    }
    rs.regions[static_cast<std::size_t>(label)].cells.emplace_back(
        static_cast<std::int32_t>(idx / w), static_cast<std::int32_t>(idx % w));
  }

  for (auto& region : rs.regions) {
    double lat = 0.0, lon = 0.0;
    for (const auto& [r, c] : region.cells) {
      const GeoPoint p = g.center_of(r, c);
      lat += p.lat;
      lon += p.lon;
    }
    const auto count = static_cast<double>(region.cells.size());
    region.centroid = {lat / count, lon / count};
  }
  return rs;
}

RegionSet station_regions(const std::vector<GeoPoint>& positions) {
  RegionSet rs;
  rs.grid_height = static_cast<std::int64_t>(positions.size());
  rs.grid_width = 1;
  if (!positions.empty())
    rs.bbox = {positions[0].lat, positions[0].lon, positions[0].lat, positions[0].lon};
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Region region;
    region.id = static_cast<std::int32_t>(i);
    region.cells = {{static_cast<std::int32_t>(i), 0}};
    region.centroid = positions[i];
    rs.regions.push_back(std::move(region));
    rs.bbox.min_lat = std::min(rs.bbox.min_lat, positions[i].lat);
    rs.bbox.max_lat = std::max(rs.bbox.max_lat, positions[i].lat);
    rs.bbox.min_lon = std::min(rs.bbox.min_lon, positions[i].lon);
    rs.bbox.max_lon = std::max(rs.bbox.max_lon, positions[i].lon);
  }
  return rs;
}

}  // namespace mvgcn::mapseg
