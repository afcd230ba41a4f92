#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvgcn/mapseg/regions.hpp"
#include "mvgcn/numkit/tensor.hpp"
#include "mvgcn/stg/trips.hpp"

namespace mvgcn::dataprep {

inline constexpr int kInflow = 0;
inline constexpr int kOutflow = 1;

/// Time-indexed stack of graph signals: values laid out (T, N, C) row-major,
/// channel 0 inflow and channel 1 outflow.
struct FlowSeries {
  std::int64_t nodes = 0;
  std::int64_t channels = 2;
  std::int64_t steps = 0;
  std::int64_t start_ts = 0;
  std::int64_t interval_seconds = 3600;
  numkit::Tensor values;

  static FlowSeries zeros(std::int64_t steps, std::int64_t nodes, std::int64_t channels,
                          std::int64_t start_ts, std::int64_t interval_seconds);

  double& at(std::int64_t t, std::int64_t i, std::int64_t c);
  double at(std::int64_t t, std::int64_t i, std::int64_t c) const;
  /// N x C matrix for one timestep.
  numkit::Tensor slice(std::int64_t t) const;
  std::int64_t timestamp_of(std::int64_t t) const { return start_ts + t * interval_seconds; }
};

struct AggregateResult {
  FlowSeries series;
  std::int64_t rejected = 0;    // unmappable endpoint or slice outside the span
  std::int64_t intra_region = 0;  // same-region trips add no flow
  std::int64_t total_trips = 0;
};

/// A trip from region a (start slice t1) to region b != a (end slice t2) adds
/// one to a's outflow at t1 and one to b's inflow at t2. Trips are counted
/// all-or-nothing: any unmappable endpoint or out-of-span slice rejects the
/// whole trip, so total outflow + intra + rejected == total trips.
AggregateResult aggregate_flows(const std::vector<stg::TripRecord>& trips,
                                const mapseg::RegionSet& regions, std::int64_t interval_seconds,
                                std::optional<stg::TimeSpan> span = std::nullopt);

}  // namespace mvgcn::dataprep
