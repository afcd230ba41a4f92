#include "mvgcn/numkit/finite_diff.hpp"

#include <stdexcept>

namespace mvgcn::numkit {

Tensor finite_diff_grad(const std::function<double(const Tensor&)>& f, const Tensor& x, double h) {
  if (h <= 0.0) throw std::invalid_argument("finite_diff_grad: step must be positive");
  Tensor grad = Tensor::zeros(x.dims);
  Tensor probe = x;
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    const double orig = x.data[i];
    probe.data[i] = orig + h;
    const double up = f(probe);
    probe.data[i] = orig - h;
    const double down = f(probe);
    probe.data[i] = orig;
    grad.data[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace mvgcn::numkit
