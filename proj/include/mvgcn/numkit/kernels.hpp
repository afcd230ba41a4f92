#pragma once

#include "mvgcn/numkit/sparse.hpp"
#include "mvgcn/numkit/tensor.hpp"

namespace mvgcn::numkit {

enum class Activation { Relu, Tanh, Sigmoid };

// Default kernels. Parallelised with OpenMP over independent output elements;
// the per-element accumulation order is fixed, so results are bitwise
// identical to the serial reference below regardless of thread count.

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor spmm(const CsrMatrix& s, const Tensor& x);
/// y = s^T * x. Row-major scatter, kept serial.
Tensor spmm_transposed(const CsrMatrix& s, const Tensor& x);
Tensor add(const Tensor& a, const Tensor& b);
Tensor subtract(const Tensor& a, const Tensor& b);
Tensor hadamard(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
Tensor transpose(const Tensor& a);
Tensor apply_activation(const Tensor& x, Activation kind);

/// One 3x3 dilation sweep over a {0,1} raster, parallel over rows.
std::vector<std::uint8_t> dilate_pass(const std::vector<std::uint8_t>& cells, std::int64_t h,
                                      std::int64_t w);

namespace serial {
// Reference implementations used by the test suite and the kernel benchmark.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor spmm(const CsrMatrix& s, const Tensor& x);
Tensor apply_activation(const Tensor& x, Activation kind);
std::vector<std::uint8_t> dilate_pass(const std::vector<std::uint8_t>& cells, std::int64_t h,
                                      std::int64_t w);
}  // namespace serial

}  // namespace mvgcn::numkit
