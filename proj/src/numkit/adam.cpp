#include "mvgcn/numkit/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace mvgcn::numkit {

AdamState AdamState::init(const std::vector<const Tensor*>& params, AdamConfig cfg) {
  AdamState s;
  s.cfg = cfg;
  s.m.reserve(params.size());
  s.v.reserve(params.size());
  for (const Tensor* p : params) {
    s.m.push_back(Tensor::zeros(p->dims));
    s.v.push_back(Tensor::zeros(p->dims));
  }
  return s;
}

void adam_step(const std::vector<Tensor*>& params, const std::vector<Tensor>& grads,
               AdamState& state, double lr) {
  if (lr <= 0.0) throw std::invalid_argument("adam_step: learning rate must be positive");
  if (params.size() != grads.size() || params.size() != state.m.size())
    throw std::invalid_argument("adam_step: tensor count mismatch");

  state.step += 1;
  const double b1 = state.cfg.beta1;
  const double b2 = state.cfg.beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(state.step));

  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor& p = *params[k];
    const Tensor& g = grads[k];
    if (!p.same_shape(g) || !p.same_shape(state.m[k]))
      throw std::invalid_argument("adam_step: shape mismatch");
    for (std::size_t i = 0; i < p.data.size(); ++i) {
      const double gi = g.data[i];
      if (gi == 0.0) continue;  // lazy: zero gradient leaves params and moments alone
      double& m = state.m[k].data[i];
      double& v = state.v[k].data[i];
      m = b1 * m + (1.0 - b1) * gi;
      v = b2 * v + (1.0 - b2) * gi * gi;
      const double mhat = m / corr1;
      const double vhat = v / corr2;
      p.data[i] -= lr * mhat / (std::sqrt(vhat) + state.cfg.epsilon);
    }
  }
}

}  // namespace mvgcn::numkit
