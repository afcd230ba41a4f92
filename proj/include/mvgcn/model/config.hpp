#pragma once

#include <cstdint>
#include <string>

#include "mvgcn/numkit/kernels.hpp"

namespace mvgcn::model {

struct ModelConfig {
  std::int64_t hidden_width = 32;  // F, shared by every graph-conv layer
  int residual_units = 3;          // M; 5 conv layers total with in/out projections
  numkit::Activation hidden_activation = numkit::Activation::Relu;
  numkit::Activation output_activation = numkit::Activation::Tanh;
  double huber_delta = 1.0;
  double learning_rate = 3e-4;
  int batch_size = 32;
  int max_epochs = 1000;
  int patience = 50;
  std::int64_t embed_width = 10;  // hidden units per embed layer
  bool use_external = true;
  bool use_meta = true;
  bool residual = true;  // false: plain stacked layers without skips
  enum class PostNet { None, Linear } postnet = PostNet::None;
  std::uint64_t seed = 1;

  void validate() const;
  /// FNV-1a over the fields that determine parameter shapes and semantics.
  std::string config_hash(std::int64_t nodes, std::int64_t channels,
                          std::int64_t external_width) const;
};

}  // namespace mvgcn::model
