#pragma once

#include <functional>

#include "mvgcn/numkit/tensor.hpp"

namespace mvgcn::numkit {

/// Central-difference gradient (f(x+h e) - f(x-h e)) / 2h per coordinate.
/// Independent of the tape; used as the gradient oracle throughout the tests.
Tensor finite_diff_grad(const std::function<double(const Tensor&)>& f, const Tensor& x, double h);

}  // namespace mvgcn::numkit
