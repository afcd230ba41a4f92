#pragma once

#include <cstdint>
#include <vector>

#include "mvgcn/dataprep/flow_series.hpp"

namespace mvgcn::dataprep {

enum class ScaleRange { SymmetricUnit, Unit };  // [-1, 1] vs [0, 1]

/// Per-channel min-max scaler. Fit strictly on the training span; a constant
/// channel (max == min) maps to 0.
struct Scaler {
  ScaleRange range = ScaleRange::SymmetricUnit;
  std::vector<double> channel_min;
  std::vector<double> channel_max;

  static Scaler fit(const FlowSeries& series, std::int64_t fit_steps, ScaleRange range);

  double transform_value(double x, std::int64_t channel) const;
  double inverse_value(double y, std::int64_t channel) const;
  FlowSeries transform(const FlowSeries& series) const;
  numkit::Tensor inverse_matrix(const numkit::Tensor& scaled) const;  // N x C
};

}  // namespace mvgcn::dataprep
