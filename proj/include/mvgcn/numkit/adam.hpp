#pragma once

#include <cstdint>
#include <vector>

#include "mvgcn/numkit/tensor.hpp"

namespace mvgcn::numkit {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Moment accumulators, one pair per parameter tensor, shapes mirrored.
struct AdamState {
  std::int64_t step = 0;
  AdamConfig cfg;
  std::vector<Tensor> m;
  std::vector<Tensor> v;

  static AdamState init(const std::vector<const Tensor*>& params, AdamConfig cfg = {});
};

/// Bias-corrected Adam update, in place. Entries whose gradient is exactly
/// zero are skipped entirely (lazy update): parameters and their moments stay
/// untouched, so a zero gradient is the identity for any accumulator state.
void adam_step(const std::vector<Tensor*>& params, const std::vector<Tensor>& grads,
               AdamState& state, double lr);

}  // namespace mvgcn::numkit
