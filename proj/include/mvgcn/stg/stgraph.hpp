#pragma once

#include <cstdint>
#include <vector>

#include "mvgcn/mapseg/regions.hpp"
#include "mvgcn/numkit/sparse.hpp"
#include "mvgcn/numkit/tensor.hpp"
#include "mvgcn/stg/trips.hpp"

namespace mvgcn::stg {

/// Per-slice region-to-region trip counts. The diagonal holds intra-region
/// trips; adjacency construction ignores it.
struct TransitionCube {
  std::int64_t slices = 0;
  std::int64_t regions = 0;
  std::vector<std::int64_t> counts;  // slices x regions x regions, row-major

  static TransitionCube zeros(std::int64_t slices, std::int64_t regions);
  std::int64_t& at(std::int64_t t, std::int64_t i, std::int64_t j);
  std::int64_t at(std::int64_t t, std::int64_t i, std::int64_t j) const;
};

struct TransitionTally {
  TransitionCube cube;
  std::int64_t rejected = 0;  // endpoint outside all regions or span
  std::int64_t accepted = 0;
};

/// Counts each trip into the slice of its start time at (origin, destination).
/// Trips with an unmappable endpoint or an out-of-span slice are skipped and
/// tallied. Without an explicit span one is derived from the trips.
TransitionTally count_transitions(const std::vector<TripRecord>& trips,
                                  const mapseg::RegionSet& regions,
                                  std::int64_t interval_seconds,
                                  std::optional<TimeSpan> span = std::nullopt);

/// Binary symmetric adjacency from transition history. A pair's slice is
/// valid when the symmetrized count exceeds alpha; the edge exists when the
/// valid-slice ratio exceeds beta. Both comparisons are strict.
numkit::Tensor build_adjacency(const TransitionCube& cube, double alpha, double beta);

/// Thresholded Gaussian kernel: exp(-d^2 / (2 theta^2)) for d <= kappa, else
/// zero; diagonal is 1. Distances are haversine kilometers.
numkit::Tensor spatial_weights(const std::vector<mapseg::GeoPoint>& positions, double theta,
                               double kappa);

/// S = A (Hadamard) omega.
numkit::Tensor modify_adjacency(const numkit::Tensor& adjacency, const numkit::Tensor& omega);

/// Symmetric normalization of S + I: Q^{-1/2} (S + I) Q^{-1/2} with Q the
/// diagonal of row sums. Stored sparse; spectrum lies in [-1, 1].
numkit::CsrMatrix propagation_matrix(const numkit::Tensor& modified);

struct GraphParams {
  double alpha = 3.0;
  double beta = 0.1;
  double theta = 0.0;  // 0 = sample stddev of edge distances
  double kappa = 0.0;  // 0 = 80th percentile of edge distances
  bool use_spatial_weights = true;  // false degrades to the unweighted normalization
};

struct STGraph {
  std::int64_t n = 0;
  numkit::Tensor adjacency;
  numkit::Tensor omega;
  numkit::Tensor modified;
  numkit::CsrMatrix prop;
  std::vector<mapseg::GeoPoint> positions;
  double theta = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

STGraph build_stgraph(const TransitionCube& cube, const std::vector<mapseg::GeoPoint>& positions,
                      const GraphParams& params);

/// Rebuilds S and the propagation matrix from stored adjacency/omega, e.g.
/// after toggling use_spatial_weights on a loaded graph.
void rebuild_propagation(STGraph& graph, bool use_spatial_weights);

}  // namespace mvgcn::stg
