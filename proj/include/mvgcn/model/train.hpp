#pragma once

#include <string>
#include <vector>

#include "mvgcn/dataprep/dataset.hpp"
#include "mvgcn/model/forward.hpp"
#include "mvgcn/model/params.hpp"
#include "mvgcn/stg/stgraph.hpp"

namespace mvgcn::model {

struct TrainReport {
  std::vector<double> train_loss;  // per epoch, mean instance loss
  std::vector<double> val_rmse;    // per epoch, unscaled values
  int best_epoch = -1;
  double best_val_rmse = 0.0;
  std::string stop_reason;  // "early_stopping" | "max_epochs" | "divergence"
};

struct TrainResult {
  ModelParams params;  // best validation score
  TrainReport report;
};

/// Mini-batch Adam over the training split with early stopping on validation
/// RMSE. Deterministic for a fixed config seed: initialization, per-epoch
/// shuffles and gradient accumulation are all seeded or sequential.
TrainResult train(const dataprep::Dataset& dataset, const stg::STGraph& graph,
                  const ModelConfig& cfg);

/// Unscaled RMSE of the model over the given instance indices.
double evaluate_rmse(const dataprep::Dataset& dataset, const std::vector<std::size_t>& indices,
                     const stg::STGraph& graph, const ModelParams& params, const ModelConfig& cfg);

}  // namespace mvgcn::model
