#pragma once

#include <array>
#include <optional>

#include "mvgcn/dataprep/dataset.hpp"
#include "mvgcn/model/params.hpp"
#include "mvgcn/numkit/tape.hpp"
#include "mvgcn/stg/stgraph.hpp"

namespace mvgcn::model {

using numkit::Tape;

/// Tape handles of the recorded parameter leaves, mirroring ModelParams.
struct TapeParams {
  struct View {
    Tape::NodeId w_in = -1;
    std::vector<Tape::NodeId> w_res;
    Tape::NodeId w_out = -1;
  };
  std::array<std::optional<View>, dataprep::kViewCount> views;
  std::array<Tape::NodeId, dataprep::kViewCount> fusion{-1, -1, -1, -1, -1};
  Tape::NodeId w_ext = -1;
  Tape::NodeId w_meta = -1;
  Tape::NodeId w_con = -1;
  Tape::NodeId w_post = -1;
  std::vector<Tape::NodeId> flat;  // canonical order, matches params.tensors()
};

TapeParams record_params(Tape& tape, const ModelParams& params);

// The individual network pieces, exposed for tests. All operate on recorded
// nodes and return the output node.

/// f(prop * h * w); pass std::nullopt for a linear layer.
Tape::NodeId sgc_layer(Tape& tape, Tape::NodeId h, const numkit::CsrMatrix& prop, Tape::NodeId w,
                       std::optional<numkit::Activation> activation);
/// h + f(prop * h * w)
Tape::NodeId residual_unit(Tape& tape, Tape::NodeId h, const numkit::CsrMatrix& prop,
                           Tape::NodeId w, numkit::Activation activation);
Tape::NodeId view_net(Tape& tape, Tape::NodeId input, const numkit::CsrMatrix& prop,
                      const TapeParams::View& view, const ModelConfig& cfg);
/// Embeds and fuses whichever global inputs exist; returns the N x C map or
/// -1 when no global view is enabled.
Tape::NodeId embed_global(Tape& tape, const dataprep::TrainingInstance& inst,
                          const TapeParams& tp, const ModelConfig& cfg, std::int64_t nodes,
                          std::int64_t channels);
Tape::NodeId fuse_temporal(Tape& tape, const std::array<Tape::NodeId, dataprep::kViewCount>& outs,
                           const TapeParams& tp);
Tape::NodeId fuse_global(Tape& tape, Tape::NodeId temporal, Tape::NodeId global,
                         const ModelConfig& cfg, const TapeParams& tp);

/// Whole network for one instance; returns the prediction node (N x C).
Tape::NodeId forward_on_tape(Tape& tape, const dataprep::TrainingInstance& inst,
                             const numkit::CsrMatrix& prop, const TapeParams& tp,
                             const ModelConfig& cfg);

/// Tape-free forward pass via the plain kernels. Matches forward_on_tape
/// bitwise; used for inference and as the loss route under the
/// finite-difference oracle.
numkit::Tensor forward_value(const dataprep::TrainingInstance& inst,
                             const numkit::CsrMatrix& prop, const ModelParams& params,
                             const ModelConfig& cfg);

/// Sum of elementwise Huber losses of one instance, tape-free.
double instance_loss(const dataprep::TrainingInstance& inst, const numkit::CsrMatrix& prop,
                     const ModelParams& params, const ModelConfig& cfg);

}  // namespace mvgcn::model
