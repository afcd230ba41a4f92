#include "mvgcn/dataprep/flow_series.hpp"

#include <stdexcept>

namespace mvgcn::dataprep {

FlowSeries FlowSeries::zeros(std::int64_t steps, std::int64_t nodes, std::int64_t channels,
                             std::int64_t start_ts, std::int64_t interval_seconds) {
  if (interval_seconds <= 0) throw std::invalid_argument("flow series: interval must be positive");
  FlowSeries s;
  s.nodes = nodes;
  s.channels = channels;
  s.steps = steps;
  s.start_ts = start_ts;
  s.interval_seconds = interval_seconds;
  s.values = numkit::Tensor::zeros({steps, nodes, channels});
  return s;
}

double& FlowSeries::at(std::int64_t t, std::int64_t i, std::int64_t c) {
  return values.data[static_cast<std::size_t>((t * nodes + i) * channels + c)];
}

double FlowSeries::at(std::int64_t t, std::int64_t i, std::int64_t c) const {
  return values.data[static_cast<std::size_t>((t * nodes + i) * channels + c)];
}

numkit::Tensor FlowSeries::slice(std::int64_t t) const {
  numkit::Tensor m = numkit::Tensor::zeros({nodes, channels});
  const std::size_t offset = static_cast<std::size_t>(t * nodes * channels);
  for (std::size_t k = 0; k < m.data.size(); ++k) m.data[k] = values.data[offset + k];
  return m;
}

AggregateResult aggregate_flows(const std::vector<stg::TripRecord>& trips,
                                const mapseg::RegionSet& regions, std::int64_t interval_seconds,
                                std::optional<stg::TimeSpan> span) {
  if (interval_seconds <= 0) throw std::invalid_argument("aggregate_flows: interval must be positive");
  const stg::TimeSpan sp = span ? *span : stg::derive_span(trips, interval_seconds);

  AggregateResult result;
  result.series = FlowSeries::zeros(sp.num_slices, regions.count(), 2, sp.start_ts,
                                    interval_seconds);
  result.total_trips = static_cast<std::int64_t>(trips.size());
  const auto labels = regions.label_grid();

  for (const auto& trip : trips) {
    std::int32_t origin = trip.origin_region;
    std::int32_t dest = trip.dest_region;
    if (!trip.pre_mapped) {
      origin = regions.region_of(trip.start_point, labels);
      dest = regions.region_of(trip.end_point, labels);
    }
    const std::int64_t t1 = (trip.start_ts - sp.start_ts) / interval_seconds;
    const std::int64_t t2 = (trip.end_ts - sp.start_ts) / interval_seconds;
    const bool mapped = origin >= 0 && origin < regions.count() && dest >= 0 && dest < regions.count();
    const bool in_span = trip.start_ts >= sp.start_ts && trip.end_ts >= sp.start_ts &&
                         t1 < sp.num_slices && t2 < sp.num_slices;
    if (!mapped || !in_span) {
      ++result.rejected;
      continue;
    }
    if (origin == dest) {
      ++result.intra_region;  // crowds moving within one region carry no flow
      continue;
    }
    result.series.at(t1, origin, kOutflow) += 1.0;
    result.series.at(t2, dest, kInflow) += 1.0;
  }
  return result;
}

}  // namespace mvgcn::dataprep
