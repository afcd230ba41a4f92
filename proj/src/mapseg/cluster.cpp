#include "mvgcn/mapseg/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mvgcn::mapseg {

namespace {

std::vector<double> ranks_with_ties(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return a < b;
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg_rank = 1.0 + (static_cast<double>(i) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg_rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("spearman: constant series");
  return sxy / std::sqrt(sxx * syy);
}

// Correlation with a sentinel for constant profiles so clustering can still
// order such pairs deterministically (always last).
constexpr double kConstantProfile = -2.0;

double profile_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  try {
    return spearman(x, y);
  } catch (const std::invalid_argument&) {
    return kConstantProfile;
  }
}

struct Working {
  std::int32_t id;  // smallest original label contained
  std::vector<Cell> cells;
  GeoPoint centroid;
  std::vector<double> profile;
  std::set<std::int32_t> neighbors;  // working-vector indices
  bool alive = true;
};

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("spearman: need at least two samples");
  return pearson(ranks_with_ties(x), ranks_with_ties(y));
}

ClusterResult cluster_regions(const RegionSet& rs, const std::vector<std::vector<double>>& profiles,
                              const ClusterOptions& opts) {
  const std::int64_t n = rs.count();
  if (opts.target_count < 1) throw std::invalid_argument("cluster: target_count must be >= 1");
  if (opts.target_count > n) throw std::invalid_argument("cluster: target_count exceeds region count");
  if (static_cast<std::int64_t>(profiles.size()) != n)
    throw std::invalid_argument("cluster: one profile per region required");
  for (const auto& p : profiles)
    if (p.size() != profiles[0].size())
      throw std::invalid_argument("cluster: profiles must share a length");
  for (std::int64_t i = 0; i < n; ++i)
    if (rs.regions[static_cast<std::size_t>(i)].id != static_cast<std::int32_t>(i))
      throw std::invalid_argument("cluster: region labels must be contiguous 0..N-1");

  std::vector<Working> work(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    auto& w = work[static_cast<std::size_t>(i)];
    w.id = rs.regions[static_cast<std::size_t>(i)].id;
    w.cells = rs.regions[static_cast<std::size_t>(i)].cells;
    w.centroid = rs.regions[static_cast<std::size_t>(i)].centroid;
    w.profile = profiles[static_cast<std::size_t>(i)];
  }

  // Region adjacency.
  if (opts.adjacency == ClusterOptions::Adjacency::Grid) {
    const auto labels = rs.label_grid();
    const std::int64_t h = rs.grid_height, w = rs.grid_width;
    for (std::int64_t r = 0; r < h; ++r) {
      for (std::int64_t c = 0; c < w; ++c) {
        const std::int32_t a = labels[static_cast<std::size_t>(r * w + c)];
        if (a < 0) continue;
        // forward half of the 5x5 Chebyshev-2 window avoids double visits
        for (std::int64_t dr = 0; dr <= 2; ++dr) {
          for (std::int64_t dc = dr == 0 ? 1 : -2; dc <= 2; ++dc) {
            const std::int64_t rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
            const std::int32_t b = labels[static_cast<std::size_t>(rr * w + cc)];
            if (b < 0 || b == a) continue;
            work[static_cast<std::size_t>(a)].neighbors.insert(b);
            work[static_cast<std::size_t>(b)].neighbors.insert(a);
          }
        }
      }
    }
  } else {
    const int k = std::max(1, opts.knn);
    for (std::int64_t i = 0; i < n; ++i) {
      std::vector<std::pair<double, std::int32_t>> dist;
      for (std::int64_t j = 0; j < n; ++j) {
        if (i == j) continue;
        dist.emplace_back(haversine_km(work[static_cast<std::size_t>(i)].centroid,
                                       work[static_cast<std::size_t>(j)].centroid),
                          static_cast<std::int32_t>(j));
      }
      std::sort(dist.begin(), dist.end());
      for (int kk = 0; kk < k && kk < static_cast<int>(dist.size()); ++kk) {
        work[static_cast<std::size_t>(i)].neighbors.insert(dist[static_cast<std::size_t>(kk)].second);
        work[static_cast<std::size_t>(dist[static_cast<std::size_t>(kk)].second)].neighbors.insert(
            static_cast<std::int32_t>(i));
      }
    }
  }

  std::int64_t alive = n;

  auto merge_into = [&](std::int32_t keep, std::int32_t drop) {
    Working& a = work[static_cast<std::size_t>(keep)];
    Working& b = work[static_cast<std::size_t>(drop)];
    const double wa = static_cast<double>(a.cells.size());
    const double wb = static_cast<double>(b.cells.size());
    for (std::size_t t = 0; t < a.profile.size(); ++t)
      a.profile[t] = (wa * a.profile[t] + wb * b.profile[t]) / (wa + wb);
    a.centroid.lat = (wa * a.centroid.lat + wb * b.centroid.lat) / (wa + wb);
    a.centroid.lon = (wa * a.centroid.lon + wb * b.centroid.lon) / (wa + wb);
    a.cells.insert(a.cells.end(), b.cells.begin(), b.cells.end());
    a.id = std::min(a.id, b.id);
    for (std::int32_t nb : b.neighbors) {
      if (nb == keep) continue;
      work[static_cast<std::size_t>(nb)].neighbors.erase(drop);
      work[static_cast<std::size_t>(nb)].neighbors.insert(keep);
      a.neighbors.insert(nb);
    }
    a.neighbors.erase(drop);
    a.neighbors.erase(keep);
    b.alive = false;
    b.neighbors.clear();
    --alive;
  };

  // Fold undersized regions into their most-correlated neighbour first.
  while (alive > opts.target_count) {
    std::int32_t victim = -1;
    for (std::int64_t i = 0; i < n; ++i) {
      const auto& w = work[static_cast<std::size_t>(i)];
      if (!w.alive || w.neighbors.empty()) continue;
      if (static_cast<std::int64_t>(w.cells.size()) >= opts.min_region_cells) continue;
      if (victim < 0 || w.cells.size() < work[static_cast<std::size_t>(victim)].cells.size() ||
          (w.cells.size() == work[static_cast<std::size_t>(victim)].cells.size() &&
           w.id < work[static_cast<std::size_t>(victim)].id))
        victim = static_cast<std::int32_t>(i);
    }
    if (victim < 0) break;
    const auto& w = work[static_cast<std::size_t>(victim)];
    std::int32_t best = -1;
    double best_corr = -3.0;
    for (std::int32_t nb : w.neighbors) {
      const double corr = profile_correlation(w.profile, work[static_cast<std::size_t>(nb)].profile);
      if (corr > best_corr ||
          (corr == best_corr && best >= 0 &&
           work[static_cast<std::size_t>(nb)].id < work[static_cast<std::size_t>(best)].id)) {
        best_corr = corr;
        best = nb;
      }
    }
    merge_into(work[static_cast<std::size_t>(victim)].id <= work[static_cast<std::size_t>(best)].id
                   ? victim
                   : best,
               work[static_cast<std::size_t>(victim)].id <= work[static_cast<std::size_t>(best)].id
                   ? best
                   : victim);
  }

  // Greedy agglomeration by descending profile correlation.
  while (alive > opts.target_count) {
    std::int32_t best_a = -1, best_b = -1;
    double best_corr = -3.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const auto& w = work[static_cast<std::size_t>(i)];
      if (!w.alive) continue;
      for (std::int32_t nb : w.neighbors) {
        const auto& o = work[static_cast<std::size_t>(nb)];
        if (o.id <= w.id) continue;  // visit each pair once, ordered by id
        const double corr = profile_correlation(w.profile, o.profile);
        const bool better =
            corr > best_corr ||
            (corr == best_corr &&
             (best_a < 0 || w.id < work[static_cast<std::size_t>(best_a)].id ||
              (w.id == work[static_cast<std::size_t>(best_a)].id &&
               o.id < work[static_cast<std::size_t>(best_b)].id)));
        if (better) {
          best_corr = corr;
          best_a = static_cast<std::int32_t>(i);
          best_b = nb;
        }
      }
    }
    if (best_a < 0)
      throw std::runtime_error("cluster: adjacency is disconnected, cannot reach target count");
    merge_into(best_a, best_b);
  }

  // Relabel survivors contiguously, ordered by surviving id.
  std::vector<std::int32_t> survivors;
  for (std::int64_t i = 0; i < n; ++i)
    if (work[static_cast<std::size_t>(i)].alive) survivors.push_back(static_cast<std::int32_t>(i));
  std::sort(survivors.begin(), survivors.end(), [&](std::int32_t a, std::int32_t b) {
    return work[static_cast<std::size_t>(a)].id < work[static_cast<std::size_t>(b)].id;
  });

  ClusterResult result;
  result.regions.bbox = rs.bbox;
  result.regions.grid_height = rs.grid_height;
  result.regions.grid_width = rs.grid_width;
  for (std::size_t k = 0; k < survivors.size(); ++k) {
    Working& w = work[static_cast<std::size_t>(survivors[k])];
    Region region;
    region.id = static_cast<std::int32_t>(k);
    std::sort(w.cells.begin(), w.cells.end());
    region.cells = std::move(w.cells);
    region.centroid = w.centroid;
    result.regions.regions.push_back(std::move(region));
    result.profiles.push_back(std::move(w.profile));
  }
  return result;
}

}  // namespace mvgcn::mapseg
