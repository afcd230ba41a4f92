#include "mvgcn/dataprep/dataset.hpp"

#include <stdexcept>
#include <string>

namespace mvgcn::dataprep {

namespace {

/// N x (C * l_v) stack of scaled slices: block k holds the k-th key timestep.
numkit::Tensor stack_view(const FlowSeries& scaled, const std::vector<std::int64_t>& indices) {
  const std::int64_t n = scaled.nodes, c = scaled.channels;
  const auto l = static_cast<std::int64_t>(indices.size());
  numkit::Tensor out = numkit::Tensor::zeros({n, c * l});
  for (std::int64_t k = 0; k < l; ++k)
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t ch = 0; ch < c; ++ch)
        out.at(i, k * c + ch) = scaled.at(indices[static_cast<std::size_t>(k)], i, ch);
  return out;
}

}  // namespace

Dataset make_dataset(const FlowSeries& series, const std::vector<ExternalRecord>& externals,
                     const DatasetConfig& cfg) {
  cfg.views.validate();
  if (cfg.horizon < 1) throw std::invalid_argument("dataset: horizon must be >= 1");
  if (!externals.empty() && static_cast<std::int64_t>(externals.size()) != series.steps)
    throw std::invalid_argument("dataset: externals must align with the series (one per timestep)");

  const std::int64_t week_seconds = 7 * 86400;
  if (week_seconds % series.interval_seconds != 0)
    throw std::invalid_argument("dataset: interval must divide a week for the time split");
  const std::int64_t steps_per_week = week_seconds / series.interval_seconds;
  const std::int64_t test_steps = cfg.test_weeks * steps_per_week;
  const std::int64_t val_steps = cfg.val_weeks * steps_per_week;
  const std::int64_t train_end = series.steps - test_steps - val_steps;  // exclusive, target time
  const std::int64_t val_end = series.steps - test_steps;

  const std::int64_t deepest = cfg.views.deepest_lookback();
  const std::int64_t first_origin = deepest;
  const std::int64_t first_target = first_origin + cfg.horizon - 1;
  if (train_end <= 0 || first_target >= train_end)
    throw std::invalid_argument(
        "dataset: span too short for the requested views, horizon and 4+4 week split");

  Dataset ds;
  ds.nodes = series.nodes;
  ds.channels = series.channels;
  ds.views = cfg.views;
  ds.horizon = cfg.horizon;
  ds.scaler = Scaler::fit(series, train_end, cfg.range);
  ds.vocab = externals.empty() ? ExternalVocab{}
                               : ExternalVocab::fit(externals, static_cast<std::size_t>(train_end));

  const FlowSeries scaled = ds.scaler.transform(series);

  for (std::int64_t origin = first_origin; origin + cfg.horizon - 1 < series.steps; ++origin) {
    const std::int64_t target = origin + cfg.horizon - 1;
    TrainingInstance inst;
    inst.origin = origin;
    inst.target_index = target;
    const auto indices = view_indices(origin, cfg.views);
    for (int v = 0; v < kViewCount; ++v)
      if (!indices[static_cast<std::size_t>(v)].empty())
        inst.views[static_cast<std::size_t>(v)] = stack_view(scaled, indices[static_cast<std::size_t>(v)]);
    inst.target = scaled.slice(target);
    inst.meta = encode_meta(series.timestamp_of(target), cfg.utc_offset_minutes);
    if (!externals.empty())
      inst.external = encode_external(externals[static_cast<std::size_t>(target)], ds.vocab);
    const std::size_t pos = ds.instances.size();
    if (target >= val_end)
      ds.test_idx.push_back(pos);
    else if (target >= train_end)
      ds.val_idx.push_back(pos);
    else
      ds.train_idx.push_back(pos);
    ds.instances.push_back(std::move(inst));
  }

  if (ds.train_idx.empty() || ds.val_idx.empty() || ds.test_idx.empty())
    throw std::invalid_argument("dataset: one of the splits came out empty");
  return ds;
}

}  // namespace mvgcn::dataprep
