#pragma once

#include <cstdint>
#include <vector>

#include "mvgcn/mapseg/regions.hpp"

namespace mvgcn::mapseg {

/// Spearman's rank correlation: Pearson over rank vectors, average ranks for
/// ties. Throws on length mismatch, length < 2, or a constant series.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct ClusterOptions {
  std::int64_t target_count = 1;
  /// Regions smaller than this are folded into their most-correlated
  /// neighbour before the main merge loop.
  std::int64_t min_region_cells = 4;
  enum class Adjacency {
    Grid,              // cells of two regions within Chebyshev distance 2
    NearestCentroids,  // k-nearest centroid pairs (station datasets)
  } adjacency = Adjacency::Grid;
  int knn = 8;
};

struct ClusterResult {
  RegionSet regions;
  std::vector<std::vector<double>> profiles;  // cell-count-weighted means
};

/// Greedy agglomerative merge of adjacent region pairs by descending Spearman
/// correlation of their flow profiles until target_count regions remain.
/// Ties break on the lexicographically smallest (min id, max id) pair.
ClusterResult cluster_regions(const RegionSet& rs, const std::vector<std::vector<double>>& profiles,
                              const ClusterOptions& opts);

}  // namespace mvgcn::mapseg
