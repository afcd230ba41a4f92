#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mvgcn/dataprep/views.hpp"
#include "mvgcn/model/config.hpp"
#include "mvgcn/numkit/tensor.hpp"

namespace mvgcn::model {

struct ViewParams {
  numkit::Tensor w_in;                // (C * l_v) x F
  std::vector<numkit::Tensor> w_res;  // M of F x F
  numkit::Tensor w_out;               // F x C
};

/// Every trainable tensor. Zero-length views own no parameters at all, and
/// the global path exists only for the enabled embeds.
struct ModelParams {
  std::array<std::optional<ViewParams>, dataprep::kViewCount> views;
  std::array<std::optional<numkit::Tensor>, dataprep::kViewCount> fusion;  // W_v, N x C
  std::optional<numkit::Tensor> w_ext;   // external width x embed width
  std::optional<numkit::Tensor> w_meta;  // 32 x embed width
  std::optional<numkit::Tensor> w_con;   // concat width x (N * C)
  std::optional<numkit::Tensor> w_post;  // (N*C) x (N*C), postnet=linear only

  /// Glorot-uniform weights; fusion matrices start at 1 / active view count
  /// so the initial temporal fusion is a plain average.
  static ModelParams init(const ModelConfig& cfg, const dataprep::ViewConfig& views,
                          std::int64_t nodes, std::int64_t channels, std::int64_t external_width);

  /// Canonical (name, tensor) walk; the order fixes Adam slots, checkpoint
  /// layout and gradient bookkeeping.
  void for_each(const std::function<void(const std::string&, numkit::Tensor&)>& fn);
  void for_each(const std::function<void(const std::string&, const numkit::Tensor&)>& fn) const;
  std::vector<numkit::Tensor*> tensors();
  std::vector<std::string> names() const;
  std::int64_t parameter_count() const;

  bool operator==(const ModelParams& other) const = default;
};

}  // namespace mvgcn::model
