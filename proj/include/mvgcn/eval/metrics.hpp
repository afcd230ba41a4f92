#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mvgcn::eval {

struct MetricReport {
  std::string experiment;
  std::string partition;  // "all", "normal", "sudden", "step-k", ...
  double rmse = 0.0;
  double mae = 0.0;
  std::int64_t count = 0;
};

/// Exact formulas over unscaled values; throw on empty or mismatched input.
double rmse(const std::vector<double>& truth, const std::vector<double>& pred);
double mae(const std::vector<double>& truth, const std::vector<double>& pred);

/// Streaming accumulator so callers never materialize giant vectors.
struct MetricAccumulator {
  double sq_sum = 0.0;
  double abs_sum = 0.0;
  std::int64_t count = 0;

  void add(double truth, double pred);
  MetricReport report(std::string experiment, std::string partition) const;
};

}  // namespace mvgcn::eval
