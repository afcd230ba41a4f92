#include "mvgcn/model/forward.hpp"

#include <cmath>
#include <stdexcept>

namespace mvgcn::model {

using numkit::Activation;
using numkit::CsrMatrix;
using numkit::Tensor;

TapeParams record_params(Tape& tape, const ModelParams& params) {
  TapeParams tp;
  // Leaf recording follows the canonical for_each order so tp.flat aligns
  // with params.tensors().
  const_cast<ModelParams&>(params).for_each([&](const std::string& name, Tensor& t) {
    const auto id = tape.leaf(t, true);
    tp.flat.push_back(id);
    if (name.rfind("view", 0) == 0) {
      const int v = name[4] - '0';
      auto& view = tp.views[static_cast<std::size_t>(v)];
      if (!view) view.emplace();
      if (name.find("w_in") != std::string::npos)
        view->w_in = id;
      else if (name.find("w_out") != std::string::npos)
        view->w_out = id;
      else
        view->w_res.push_back(id);
    } else if (name.rfind("fusion", 0) == 0) {
      tp.fusion[static_cast<std::size_t>(name[6] - '0')] = id;
    } else if (name == "w_ext") {
      tp.w_ext = id;
    } else if (name == "w_meta") {
      tp.w_meta = id;
    } else if (name == "w_con") {
      tp.w_con = id;
    } else if (name == "w_post") {
      tp.w_post = id;
    }
  });
  return tp;
}

Tape::NodeId sgc_layer(Tape& tape, Tape::NodeId h, const CsrMatrix& prop, Tape::NodeId w,
                       std::optional<Activation> activation) {
  const auto filtered = tape.matmul(tape.spmm(prop, h), w);
  return activation ? tape.activation(filtered, *activation) : filtered;
}

Tape::NodeId residual_unit(Tape& tape, Tape::NodeId h, const CsrMatrix& prop, Tape::NodeId w,
                           Activation activation) {
  return tape.add(h, sgc_layer(tape, h, prop, w, activation));
}

Tape::NodeId view_net(Tape& tape, Tape::NodeId input, const CsrMatrix& prop,
                      const TapeParams::View& view, const ModelConfig& cfg) {
  auto h = sgc_layer(tape, input, prop, view.w_in, cfg.hidden_activation);
  for (const auto w : view.w_res)
    h = cfg.residual ? residual_unit(tape, h, prop, w, cfg.hidden_activation)
                     : sgc_layer(tape, h, prop, w, cfg.hidden_activation);
  return sgc_layer(tape, h, prop, view.w_out, std::nullopt);
}

Tape::NodeId embed_global(Tape& tape, const dataprep::TrainingInstance& inst,
                          const TapeParams& tp, const ModelConfig& cfg, std::int64_t nodes,
                          std::int64_t channels) {
  Tape::NodeId o_ext = -1, o_meta = -1;
  if (tp.w_ext >= 0 && !inst.external.empty()) {
    const auto leaf = tape.leaf(inst.external, false);
    o_ext = tape.activation(tape.matmul(leaf, tp.w_ext), cfg.hidden_activation);
  }
  if (tp.w_meta >= 0 && !inst.meta.empty()) {
    const auto leaf = tape.leaf(inst.meta, false);
    o_meta = tape.activation(tape.matmul(leaf, tp.w_meta), cfg.hidden_activation);
  }
  if (o_ext < 0 && o_meta < 0) return -1;
  Tape::NodeId concat;
  if (o_ext >= 0 && o_meta >= 0)
    concat = tape.concat_cols(o_ext, o_meta);
  else
    concat = o_ext >= 0 ? o_ext : o_meta;
  return tape.reshape(tape.matmul(concat, tp.w_con), {nodes, channels});
}

Tape::NodeId fuse_temporal(Tape& tape, const std::array<Tape::NodeId, dataprep::kViewCount>& outs,
                           const TapeParams& tp) {
  Tape::NodeId fused = -1;
  for (int v = 0; v < dataprep::kViewCount; ++v) {
    if (outs[static_cast<std::size_t>(v)] < 0) continue;
    const auto term = tape.hadamard(tp.fusion[static_cast<std::size_t>(v)],
                                    outs[static_cast<std::size_t>(v)]);
    fused = fused < 0 ? term : tape.add(fused, term);
  }
  if (fused < 0) throw std::invalid_argument("fuse_temporal: no active views");
  return fused;
}

Tape::NodeId fuse_global(Tape& tape, Tape::NodeId temporal, Tape::NodeId global,
                         const ModelConfig& cfg, const TapeParams& tp) {
  Tape::NodeId pre;
  if (global >= 0) {
    const auto gate = tape.activation(global, Activation::Sigmoid);
    pre = tape.add(tape.add(temporal, global), tape.hadamard(gate, temporal));
  } else {
    // no global view: O + 0 + sigmoid(0) . O collapses to 1.5 O
    pre = tape.add(temporal, tape.scale(temporal, 0.5));
  }
  if (tp.w_post >= 0) {
    const auto& dims = tape.value(pre).dims;
    const auto flat = tape.reshape(pre, {1, dims[0] * dims[1]});
    pre = tape.reshape(tape.matmul(flat, tp.w_post), {dims[0], dims[1]});
  }
  return tape.activation(pre, cfg.output_activation);
}

Tape::NodeId forward_on_tape(Tape& tape, const dataprep::TrainingInstance& inst,
                             const CsrMatrix& prop, const TapeParams& tp, const ModelConfig& cfg) {
  std::array<Tape::NodeId, dataprep::kViewCount> outs{-1, -1, -1, -1, -1};
  for (int v = 0; v < dataprep::kViewCount; ++v) {
    const auto& view_input = inst.views[static_cast<std::size_t>(v)];
    const auto& view_params = tp.views[static_cast<std::size_t>(v)];
    if (view_input.empty() || !view_params) continue;
    const auto leaf = tape.leaf(view_input, false);
    outs[static_cast<std::size_t>(v)] = view_net(tape, leaf, prop, *view_params, cfg);
  }
  const auto temporal = fuse_temporal(tape, outs, tp);
  const auto nodes = tape.value(temporal).rows();
  const auto channels = tape.value(temporal).cols();
  const auto global = embed_global(tape, inst, tp, cfg, nodes, channels);
  return fuse_global(tape, temporal, global, cfg, tp);
}

// ---------------------------------------------------------------------------
// Tape-free mirror. Same kernels in the same order, so values are bitwise
// identical to the recorded pass.

namespace {

Tensor sgc_value(const Tensor& h, const CsrMatrix& prop, const Tensor& w,
                 std::optional<Activation> activation) {
  Tensor filtered = numkit::matmul(numkit::spmm(prop, h), w);
  return activation ? numkit::apply_activation(filtered, *activation) : filtered;
}

}  // namespace

Tensor forward_value(const dataprep::TrainingInstance& inst, const CsrMatrix& prop,
                     const ModelParams& params, const ModelConfig& cfg) {
  Tensor fused;
  bool have_fused = false;
  std::int64_t nodes = 0, channels = 0;
  for (int v = 0; v < dataprep::kViewCount; ++v) {
    const auto& view_input = inst.views[static_cast<std::size_t>(v)];
    const auto& vp = params.views[static_cast<std::size_t>(v)];
    if (view_input.empty() || !vp) continue;
    Tensor h = sgc_value(view_input, prop, vp->w_in, cfg.hidden_activation);
    for (const auto& w : vp->w_res) {
      Tensor step = sgc_value(h, prop, w, cfg.hidden_activation);
      h = cfg.residual ? numkit::add(h, step) : std::move(step);
    }
    Tensor out = sgc_value(h, prop, vp->w_out, std::nullopt);
    nodes = out.rows();
    channels = out.cols();
    Tensor term = numkit::hadamard(*params.fusion[static_cast<std::size_t>(v)], out);
    fused = have_fused ? numkit::add(fused, term) : std::move(term);
    have_fused = true;
  }
  if (!have_fused) throw std::invalid_argument("forward: no active views");

  Tensor o_ext, o_meta;
  if (params.w_ext && !inst.external.empty())
    o_ext = numkit::apply_activation(numkit::matmul(inst.external, *params.w_ext),
                                     cfg.hidden_activation);
  if (params.w_meta && !inst.meta.empty())
    o_meta = numkit::apply_activation(numkit::matmul(inst.meta, *params.w_meta),
                                      cfg.hidden_activation);

  Tensor pre;
  if (!o_ext.empty() || !o_meta.empty()) {
    Tensor concat;
    if (!o_ext.empty() && !o_meta.empty()) {
      concat = Tensor::zeros({1, o_ext.cols() + o_meta.cols()});
      for (std::int64_t j = 0; j < o_ext.cols(); ++j) concat.at(0, j) = o_ext.at(0, j);
      for (std::int64_t j = 0; j < o_meta.cols(); ++j) concat.at(0, o_ext.cols() + j) = o_meta.at(0, j);
    } else {
      concat = o_ext.empty() ? o_meta : o_ext;
    }
    Tensor con_flat = numkit::matmul(concat, *params.w_con);
    Tensor o_con({nodes, channels}, con_flat.data);
    const Tensor gate = numkit::apply_activation(o_con, Activation::Sigmoid);
    pre = numkit::add(numkit::add(fused, o_con), numkit::hadamard(gate, fused));
  } else {
    pre = numkit::add(fused, numkit::scale(fused, 0.5));
  }
  if (params.w_post) {
    Tensor flat({1, nodes * channels}, pre.data);
    Tensor post = numkit::matmul(flat, *params.w_post);
    pre = Tensor({nodes, channels}, post.data);
  }
  return numkit::apply_activation(pre, cfg.output_activation);
}

double instance_loss(const dataprep::TrainingInstance& inst, const CsrMatrix& prop,
                     const ModelParams& params, const ModelConfig& cfg) {
  const Tensor pred = forward_value(inst, prop, params, cfg);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    const double e = std::fabs(pred.data[i] - inst.target.data[i]);
    total += e <= cfg.huber_delta ? 0.5 * e * e
                                  : cfg.huber_delta * e - 0.5 * cfg.huber_delta * cfg.huber_delta;
  }
  return total;
}

}  // namespace mvgcn::model
