#include "mvgcn/stg/stgraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mvgcn/numkit/kernels.hpp"

namespace mvgcn::stg {

using numkit::CsrMatrix;
using numkit::Tensor;

TimeSpan derive_span(const std::vector<TripRecord>& trips, std::int64_t interval_seconds) {
  if (interval_seconds <= 0) throw std::invalid_argument("span: interval must be positive");
  if (trips.empty()) return {0, 0};
  std::int64_t lo = trips[0].start_ts, hi = trips[0].end_ts;
  for (const auto& t : trips) {
    lo = std::min(lo, t.start_ts);
    hi = std::max(hi, std::max(t.start_ts, t.end_ts));
  }
  TimeSpan span;
  span.start_ts = (lo / interval_seconds) * interval_seconds;
  if (lo < 0 && lo % interval_seconds != 0) span.start_ts -= interval_seconds;
  span.num_slices = (hi - span.start_ts) / interval_seconds + 1;
  return span;
}

TransitionCube TransitionCube::zeros(std::int64_t slices, std::int64_t regions) {
  TransitionCube c;
  c.slices = slices;
  c.regions = regions;
  c.counts.assign(static_cast<std::size_t>(slices * regions * regions), 0);
  return c;
}

std::int64_t& TransitionCube::at(std::int64_t t, std::int64_t i, std::int64_t j) {
  return counts[static_cast<std::size_t>((t * regions + i) * regions + j)];
}

std::int64_t TransitionCube::at(std::int64_t t, std::int64_t i, std::int64_t j) const {
  return counts[static_cast<std::size_t>((t * regions + i) * regions + j)];
}

TransitionTally count_transitions(const std::vector<TripRecord>& trips,
                                  const mapseg::RegionSet& regions,
                                  std::int64_t interval_seconds, std::optional<TimeSpan> span) {
  if (interval_seconds <= 0) throw std::invalid_argument("count_transitions: interval must be positive");
  const TimeSpan sp = span ? *span : derive_span(trips, interval_seconds);

  TransitionTally tally;
  tally.cube = TransitionCube::zeros(sp.num_slices, regions.count());
  const auto labels = regions.label_grid();

  for (const auto& trip : trips) {
    std::int32_t origin = trip.origin_region;
    std::int32_t dest = trip.dest_region;
    if (!trip.pre_mapped) {
      origin = regions.region_of(trip.start_point, labels);
      dest = regions.region_of(trip.end_point, labels);
    }
    const std::int64_t slice = (trip.start_ts - sp.start_ts) / interval_seconds;
    const bool in_span = trip.start_ts >= sp.start_ts && slice < sp.num_slices;
    if (origin < 0 || origin >= regions.count() || dest < 0 || dest >= regions.count() || !in_span) {
      ++tally.rejected;
      continue;
    }
    ++tally.cube.at(slice, origin, dest);
    ++tally.accepted;
  }
  return tally;
}

Tensor build_adjacency(const TransitionCube& cube, double alpha, double beta) {
  if (cube.slices == 0 || cube.regions == 0)
    throw std::invalid_argument("build_adjacency: empty transition cube");
  if (alpha < 0.0) throw std::invalid_argument("build_adjacency: alpha must be nonnegative");
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("build_adjacency: beta must be in [0,1]");

  const std::int64_t n = cube.regions;
  Tensor adj = Tensor::zeros({n, n});
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      std::int64_t valid = 0;
      for (std::int64_t t = 0; t < cube.slices; ++t) {
        const auto symmetrized = cube.at(t, i, j) + cube.at(t, j, i);
        if (static_cast<double>(symmetrized) > alpha) ++valid;
      }
      const double ratio = static_cast<double>(valid) / static_cast<double>(cube.slices);
      if (ratio > beta) {
        adj.at(i, j) = 1.0;
        adj.at(j, i) = 1.0;
      }
    }
  }
  return adj;
}

Tensor spatial_weights(const std::vector<mapseg::GeoPoint>& positions, double theta, double kappa) {
  if (theta <= 0.0) throw std::invalid_argument("spatial_weights: theta must be positive");
  if (kappa <= 0.0) throw std::invalid_argument("spatial_weights: kappa must be positive");
  const auto n = static_cast<std::int64_t>(positions.size());
  Tensor omega = Tensor::zeros({n, n});
  for (std::int64_t i = 0; i < n; ++i) {
    omega.at(i, i) = 1.0;
    for (std::int64_t j = i + 1; j < n; ++j) {
      const double d = mapseg::haversine_km(positions[static_cast<std::size_t>(i)],
                                            positions[static_cast<std::size_t>(j)]);
      const double w = d <= kappa ? std::exp(-(d * d) / (2.0 * theta * theta)) : 0.0;
      omega.at(i, j) = w;
      omega.at(j, i) = w;
    }
  }
  return omega;
}

Tensor modify_adjacency(const Tensor& adjacency, const Tensor& omega) {
  if (!adjacency.same_shape(omega))
    throw std::invalid_argument("modify_adjacency: dimension mismatch");
  return numkit::hadamard(adjacency, omega);
}

CsrMatrix propagation_matrix(const Tensor& modified) {
  const std::int64_t n = modified.rows();
  std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    double row_sum = 1.0;  // the added self-loop
    for (std::int64_t j = 0; j < n; ++j) row_sum += i == j ? 0.0 : modified.at(i, j);
    row_sum += modified.at(i, i);
    degree[static_cast<std::size_t>(i)] = row_sum;
  }
  std::vector<std::tuple<std::int64_t, std::int64_t, double>> trips;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      const double s_tilde = modified.at(i, j) + (i == j ? 1.0 : 0.0);
      if (s_tilde == 0.0) continue;
      trips.emplace_back(i, j,
                         s_tilde / std::sqrt(degree[static_cast<std::size_t>(i)] *
                                             degree[static_cast<std::size_t>(j)]));
    }
  }
  return CsrMatrix::from_triplets(n, n, std::move(trips));
}

namespace {

// theta: sample standard deviation of edge distances; kappa: 80th percentile
// (nearest rank). Falls back to 1 km / the max distance when A has too few
// edges to estimate them.
void default_kernel_params(const Tensor& adjacency,
                           const std::vector<mapseg::GeoPoint>& positions, double& theta,
                           double& kappa) {
  std::vector<double> dists;
  const std::int64_t n = adjacency.rows();
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j)
      if (adjacency.at(i, j) != 0.0)
        dists.push_back(mapseg::haversine_km(positions[static_cast<std::size_t>(i)],
                                             positions[static_cast<std::size_t>(j)]));
  if (theta <= 0.0) {
    if (dists.size() >= 2) {
      double mean = 0.0;
      for (double d : dists) mean += d;
      mean /= static_cast<double>(dists.size());
      double var = 0.0;
      for (double d : dists) var += (d - mean) * (d - mean);
      var /= static_cast<double>(dists.size() - 1);
      theta = std::sqrt(var);
    }
    if (theta <= 0.0) theta = 1.0;
  }
  if (kappa <= 0.0) {
    if (!dists.empty()) {
      std::sort(dists.begin(), dists.end());
      const auto rank = static_cast<std::size_t>(
          std::ceil(0.8 * static_cast<double>(dists.size())));
      kappa = dists[std::max<std::size_t>(rank, 1) - 1];
    }
    if (kappa <= 0.0) kappa = 1.0;
  }
}

}  // namespace

STGraph build_stgraph(const TransitionCube& cube, const std::vector<mapseg::GeoPoint>& positions,
                      const GraphParams& params) {
  if (cube.regions != static_cast<std::int64_t>(positions.size()))
    throw std::invalid_argument("build_stgraph: positions do not match cube regions");
  STGraph g;
  g.n = cube.regions;
  g.positions = positions;
  g.alpha = params.alpha;
  g.beta = params.beta;
  g.adjacency = build_adjacency(cube, params.alpha, params.beta);
  double theta = params.theta, kappa = params.kappa;
  default_kernel_params(g.adjacency, positions, theta, kappa);
  g.theta = theta;
  g.kappa = kappa;
  g.omega = spatial_weights(positions, theta, kappa);
  rebuild_propagation(g, params.use_spatial_weights);
  return g;
}

void rebuild_propagation(STGraph& graph, bool use_spatial_weights) {
  if (use_spatial_weights) {
    graph.modified = modify_adjacency(graph.adjacency, graph.omega);
  } else {
    graph.modified = graph.adjacency;  // unweighted: S degenerates to A
  }
  graph.prop = propagation_matrix(graph.modified);
}

}  // namespace mvgcn::stg
