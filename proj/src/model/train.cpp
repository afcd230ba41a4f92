#include "mvgcn/model/train.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mvgcn/eval/metrics.hpp"
#include "mvgcn/numkit/adam.hpp"

namespace mvgcn::model {

using numkit::Tensor;

namespace {

/// Fisher-Yates with raw engine draws so shuffles do not depend on the
/// standard library's distribution implementations.
void seeded_shuffle(std::vector<std::size_t>& items, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(engine() % i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace

double evaluate_rmse(const dataprep::Dataset& dataset, const std::vector<std::size_t>& indices,
                     const stg::STGraph& graph, const ModelParams& params, const ModelConfig& cfg) {
  eval::MetricAccumulator acc;
  for (const auto idx : indices) {
    const auto& inst = dataset.instances[idx];
    const Tensor pred = dataset.scaler.inverse_matrix(forward_value(inst, graph.prop, params, cfg));
    const Tensor truth = dataset.scaler.inverse_matrix(inst.target);
    for (std::size_t k = 0; k < pred.data.size(); ++k) acc.add(truth.data[k], pred.data[k]);
  }
  return acc.report("", "").rmse;
}

TrainResult train(const dataprep::Dataset& dataset, const stg::STGraph& graph,
                  const ModelConfig& cfg) {
  cfg.validate();
  if (dataset.train_idx.empty() || dataset.val_idx.empty())
    throw std::invalid_argument("train: empty train or validation split");

  ModelParams params = ModelParams::init(cfg, dataset.views, dataset.nodes, dataset.channels,
                                         dataset.vocab.width() * (dataset.instances[0].external.empty() ? 0 : 1));
  auto param_ptrs = params.tensors();
  std::vector<const Tensor*> const_ptrs(param_ptrs.begin(), param_ptrs.end());
  numkit::AdamState adam = numkit::AdamState::init(const_ptrs);

  TrainResult result;
  result.report.best_epoch = -1;
  double best_val = std::numeric_limits<double>::infinity();
  ModelParams best_params = params;

  std::vector<std::size_t> order(dataset.train_idx);

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    order = dataset.train_idx;
    seeded_shuffle(order, cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(epoch + 1)));

    double epoch_loss_sum = 0.0;
    bool diverged = false;

    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const auto batch = static_cast<double>(stop - start);

      Tape tape;
      const TapeParams tp = record_params(tape, params);
      Tape::NodeId batch_loss = -1;
      for (std::size_t k = start; k < stop; ++k) {
        const auto& inst = dataset.instances[order[k]];
        const auto pred = forward_on_tape(tape, inst, graph.prop, tp, cfg);
        const auto loss = tape.huber_sum(pred, inst.target, cfg.huber_delta);
        batch_loss = batch_loss < 0 ? loss : tape.add(batch_loss, loss);
      }
      batch_loss = tape.scale(batch_loss, 1.0 / batch);

      const double loss_value = tape.value(batch_loss).data[0];
      if (!std::isfinite(loss_value)) {
        diverged = true;
        break;
      }
      epoch_loss_sum += loss_value * batch;

      const auto grads = tape.backward(batch_loss);
      std::vector<Tensor> param_grads;
      param_grads.reserve(tp.flat.size());
      for (std::size_t k = 0; k < tp.flat.size(); ++k) {
        const auto& g = grads[tp.flat[k]];
        param_grads.push_back(g.empty() ? Tensor::zeros(param_ptrs[k]->dims) : g);
      }
      numkit::adam_step(param_ptrs, param_grads, adam, cfg.learning_rate);
    }

    if (diverged) {
      result.report.stop_reason = "divergence";
      break;
    }

    result.report.train_loss.push_back(epoch_loss_sum / static_cast<double>(order.size()));
    const double val = evaluate_rmse(dataset, dataset.val_idx, graph, params, cfg);
    result.report.val_rmse.push_back(val);

    if (val < best_val) {
      best_val = val;
      result.report.best_epoch = epoch;
      best_params = params;
    }
    if (epoch - result.report.best_epoch >= cfg.patience) {
      result.report.stop_reason = "early_stopping";
      break;
    }
  }

  if (result.report.stop_reason.empty()) result.report.stop_reason = "max_epochs";
  result.report.best_val_rmse = best_val;
  result.params = result.report.best_epoch >= 0 ? std::move(best_params) : std::move(params);
  return result;
}

}  // namespace mvgcn::model
