#include "mvgcn/dataprep/scaler.hpp"

#include <stdexcept>

namespace mvgcn::dataprep {

Scaler Scaler::fit(const FlowSeries& series, std::int64_t fit_steps, ScaleRange range) {
  if (fit_steps < 1 || fit_steps > series.steps)
    throw std::invalid_argument("scaler: fit span outside the series");
  Scaler s;
  s.range = range;
  s.channel_min.assign(static_cast<std::size_t>(series.channels), 0.0);
  s.channel_max.assign(static_cast<std::size_t>(series.channels), 0.0);
  for (std::int64_t c = 0; c < series.channels; ++c) {
    double lo = series.at(0, 0, c), hi = series.at(0, 0, c);
    for (std::int64_t t = 0; t < fit_steps; ++t)
      for (std::int64_t i = 0; i < series.nodes; ++i) {
        const double v = series.at(t, i, c);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    s.channel_min[static_cast<std::size_t>(c)] = lo;
    s.channel_max[static_cast<std::size_t>(c)] = hi;
  }
  return s;
}

double Scaler::transform_value(double x, std::int64_t channel) const {
  const double lo = channel_min[static_cast<std::size_t>(channel)];
  const double hi = channel_max[static_cast<std::size_t>(channel)];
  if (hi == lo) return 0.0;  // constant channel rule
  const double unit = (x - lo) / (hi - lo);
  return range == ScaleRange::Unit ? unit : 2.0 * unit - 1.0;
}

double Scaler::inverse_value(double y, std::int64_t channel) const {
  const double lo = channel_min[static_cast<std::size_t>(channel)];
  const double hi = channel_max[static_cast<std::size_t>(channel)];
  if (hi == lo) return lo;
  const double unit = range == ScaleRange::Unit ? y : (y + 1.0) / 2.0;
  return lo + unit * (hi - lo);
}

FlowSeries Scaler::transform(const FlowSeries& series) const {
  FlowSeries out = series;
  for (std::int64_t t = 0; t < series.steps; ++t)
    for (std::int64_t i = 0; i < series.nodes; ++i)
      for (std::int64_t c = 0; c < series.channels; ++c)
        out.at(t, i, c) = transform_value(series.at(t, i, c), c);
  return out;
}

numkit::Tensor Scaler::inverse_matrix(const numkit::Tensor& scaled) const {
  numkit::Tensor out = scaled;
  for (std::int64_t i = 0; i < scaled.rows(); ++i)
    for (std::int64_t c = 0; c < scaled.cols(); ++c) out.at(i, c) = inverse_value(scaled.at(i, c), c);
  return out;
}

}  // namespace mvgcn::dataprep
