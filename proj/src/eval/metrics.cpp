#include "mvgcn/eval/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mvgcn::eval {

double rmse(const std::vector<double>& truth, const std::vector<double>& pred) {
  if (truth.empty() || truth.size() != pred.size())
    throw std::invalid_argument("rmse: inputs must be nonempty and equal length");
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    acc += (truth[i] - pred[i]) * (truth[i] - pred[i]);
  return std::sqrt(acc / static_cast<double>(truth.size()));
}

double mae(const std::vector<double>& truth, const std::vector<double>& pred) {
  if (truth.empty() || truth.size() != pred.size())
    throw std::invalid_argument("mae: inputs must be nonempty and equal length");
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) acc += std::fabs(truth[i] - pred[i]);
  return acc / static_cast<double>(truth.size());
}

void MetricAccumulator::add(double truth, double pred) {
  const double e = truth - pred;
  sq_sum += e * e;
  abs_sum += std::fabs(e);
  ++count;
}

MetricReport MetricAccumulator::report(std::string experiment, std::string partition) const {
  if (count == 0) throw std::invalid_argument("metrics: empty accumulator");
  MetricReport r;
  r.experiment = std::move(experiment);
  r.partition = std::move(partition);
  r.rmse = std::sqrt(sq_sum / static_cast<double>(count));
  r.mae = abs_sum / static_cast<double>(count);
  r.count = count;
  return r;
}

}  // namespace mvgcn::eval
