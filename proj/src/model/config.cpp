#include "mvgcn/model/config.hpp"

#include <sstream>
#include <stdexcept>

#include "mvgcn/numkit/hash.hpp"

namespace mvgcn::model {

void ModelConfig::validate() const {
  if (hidden_width < 1) throw std::invalid_argument("model config: hidden width must be >= 1");
  if (residual_units < 1) throw std::invalid_argument("model config: residual units must be >= 1");
  if (huber_delta <= 0.0) throw std::invalid_argument("model config: huber delta must be positive");
  if (learning_rate <= 0.0) throw std::invalid_argument("model config: learning rate must be positive");
  if (batch_size < 1) throw std::invalid_argument("model config: batch size must be >= 1");
  if (max_epochs < 1) throw std::invalid_argument("model config: max epochs must be >= 1");
  if (patience < 1) throw std::invalid_argument("model config: patience must be >= 1");
  if (embed_width < 1) throw std::invalid_argument("model config: embed width must be >= 1");
}

namespace {
const char* act_name(numkit::Activation a) {
  switch (a) {
    case numkit::Activation::Relu:
      return "relu";
    case numkit::Activation::Tanh:
      return "tanh";
    case numkit::Activation::Sigmoid:
      return "sigmoid";
  }
  return "?";
}
}  // namespace

std::string ModelConfig::config_hash(std::int64_t nodes, std::int64_t channels,
                                     std::int64_t external_width) const {
  std::ostringstream os;
  os << "F=" << hidden_width << ";M=" << residual_units << ";f=" << act_name(hidden_activation)
     << ";fo=" << act_name(output_activation) << ";delta=" << huber_delta
     << ";E=" << embed_width << ";ext=" << (use_external ? external_width : -1)
     << ";meta=" << (use_meta ? 1 : 0) << ";res=" << (residual ? 1 : 0)
     << ";post=" << (postnet == PostNet::Linear ? "linear" : "none") << ";N=" << nodes
     << ";C=" << channels;
  return numkit::fnv1a64_hex(os.str());
}

}  // namespace mvgcn::model
