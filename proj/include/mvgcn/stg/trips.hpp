#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvgcn/mapseg/grid.hpp"

namespace mvgcn::stg {

/// One origin-destination trip. Either both geographic endpoints are set or
/// both region ids are (pre-mapped input).
struct TripRecord {
  std::int64_t start_ts = 0;  // epoch seconds
  std::int64_t end_ts = 0;
  bool pre_mapped = false;
  mapseg::GeoPoint start_point;
  mapseg::GeoPoint end_point;
  std::int32_t origin_region = -1;
  std::int32_t dest_region = -1;
};

/// Half-open slice span: indices 0..num_slices-1 starting at start_ts.
struct TimeSpan {
  std::int64_t start_ts = 0;
  std::int64_t num_slices = 0;
};

/// Span covering all trip start/end stamps, with start floored to a whole
/// slice boundary relative to the epoch.
TimeSpan derive_span(const std::vector<TripRecord>& trips, std::int64_t interval_seconds);

}  // namespace mvgcn::stg
