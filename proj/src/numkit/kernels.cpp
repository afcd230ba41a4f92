#include "mvgcn/numkit/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvgcn::numkit {

namespace {

void require_2d(const Tensor& t, const char* who) {
  if (t.rank() != 2) throw std::invalid_argument(std::string(who) + ": tensor is not 2-D");
}

void matmul_rows(const Tensor& a, const Tensor& b, Tensor& out, std::int64_t i) {
  const std::int64_t k_dim = a.cols();
  const std::int64_t m = b.cols();
  const double* arow = a.data.data() + i * k_dim;
  double* orow = out.data.data() + i * m;
  for (std::int64_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::int64_t k = 0; k < k_dim; ++k) acc += arow[k] * b.data[static_cast<std::size_t>(k * m + j)];
    orow[j] = acc;
  }
}

void spmm_row(const CsrMatrix& s, const Tensor& x, Tensor& out, std::int64_t i) {
  const std::int64_t f = x.cols();
  double* orow = out.data.data() + i * f;
  for (auto k = s.row_ptr[static_cast<std::size_t>(i)]; k < s.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
    const double v = s.values[static_cast<std::size_t>(k)];
    const double* xrow = x.data.data() + s.col_idx[static_cast<std::size_t>(k)] * f;
    for (std::int64_t j = 0; j < f; ++j) orow[j] += v * xrow[j];
  }
}

double activate(double z, Activation kind) {
  switch (kind) {
    case Activation::Relu:
      return z > 0.0 ? z : 0.0;
    case Activation::Tanh:
      return std::tanh(z);
    case Activation::Sigmoid:
      return 1.0 / (1.0 + std::exp(-z));
  }
  return z;
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_2d(a, "matmul");
  require_2d(b, "matmul");
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner extents differ");
  Tensor out = Tensor::zeros({a.rows(), b.cols()});
  const std::int64_t n = a.rows();
#pragma omp parallel for schedule(static) if (n * b.cols() * a.cols() > 16384)
  for (std::int64_t i = 0; i < n; ++i) matmul_rows(a, b, out, i);
  return out;
}

Tensor spmm(const CsrMatrix& s, const Tensor& x) {
  require_2d(x, "spmm");
  if (s.cols != x.rows()) throw std::invalid_argument("spmm: inner extents differ");
  Tensor out = Tensor::zeros({s.rows, x.cols()});
#pragma omp parallel for schedule(static) if (s.nnz() * x.cols() > 16384)
  for (std::int64_t i = 0; i < s.rows; ++i) spmm_row(s, x, out, i);
  return out;
}

Tensor spmm_transposed(const CsrMatrix& s, const Tensor& x) {
  require_2d(x, "spmm_transposed");
  if (s.rows != x.rows()) throw std::invalid_argument("spmm_transposed: inner extents differ");
  const std::int64_t f = x.cols();
  Tensor out = Tensor::zeros({s.cols, f});
  for (std::int64_t i = 0; i < s.rows; ++i) {
    const double* xrow = x.data.data() + i * f;
    for (auto k = s.row_ptr[static_cast<std::size_t>(i)]; k < s.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      const double v = s.values[static_cast<std::size_t>(k)];
      double* orow = out.data.data() + s.col_idx[static_cast<std::size_t>(k)] * f;
      for (std::int64_t j = 0; j < f; ++j) orow[j] += v * xrow[j];
    }
  }
  return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("add: shape mismatch");
  Tensor out = a;
  const std::int64_t n = out.numel();
#pragma omp parallel for schedule(static) if (n > 65536)
  for (std::int64_t i = 0; i < n; ++i) out.data[static_cast<std::size_t>(i)] += b.data[static_cast<std::size_t>(i)];
  return out;
}

Tensor subtract(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("subtract: shape mismatch");
  Tensor out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("hadamard: shape mismatch");
  Tensor out = a;
  const std::int64_t n = out.numel();
#pragma omp parallel for schedule(static) if (n > 65536)
  for (std::int64_t i = 0; i < n; ++i) out.data[static_cast<std::size_t>(i)] *= b.data[static_cast<std::size_t>(i)];
  return out;
}

Tensor scale(const Tensor& a, double factor) {
  Tensor out = a;
  for (double& v : out.data) v *= factor;
  return out;
}

Tensor transpose(const Tensor& a) {
  require_2d(a, "transpose");
  Tensor out = Tensor::zeros({a.cols(), a.rows()});
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

Tensor apply_activation(const Tensor& x, Activation kind) {
  Tensor out = x;
  const std::int64_t n = out.numel();
#pragma omp parallel for schedule(static) if (n > 65536)
  for (std::int64_t i = 0; i < n; ++i)
    out.data[static_cast<std::size_t>(i)] = activate(out.data[static_cast<std::size_t>(i)], kind);
  return out;
}

std::vector<std::uint8_t> dilate_pass(const std::vector<std::uint8_t>& cells, std::int64_t h,
                                      std::int64_t w) {
  std::vector<std::uint8_t> out(cells.size(), 0);
#pragma omp parallel for schedule(static) if (h * w > 65536)
  for (std::int64_t r = 0; r < h; ++r) {
    for (std::int64_t c = 0; c < w; ++c) {
      std::uint8_t hit = 0;
      for (std::int64_t dr = -1; dr <= 1 && !hit; ++dr) {
        const std::int64_t rr = r + dr;
        if (rr < 0 || rr >= h) continue;
        for (std::int64_t dc = -1; dc <= 1; ++dc) {
          const std::int64_t cc = c + dc;
          if (cc < 0 || cc >= w) continue;
          if (cells[static_cast<std::size_t>(rr * w + cc)]) {
            hit = 1;
            break;
          }
        }
      }
      out[static_cast<std::size_t>(r * w + c)] = hit;
    }
  }
  return out;
}

namespace serial {

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_2d(a, "matmul");
  require_2d(b, "matmul");
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner extents differ");
  Tensor out = Tensor::zeros({a.rows(), b.cols()});
  for (std::int64_t i = 0; i < a.rows(); ++i) matmul_rows(a, b, out, i);
  return out;
}

Tensor spmm(const CsrMatrix& s, const Tensor& x) {
  require_2d(x, "spmm");
  if (s.cols != x.rows()) throw std::invalid_argument("spmm: inner extents differ");
  Tensor out = Tensor::zeros({s.rows, x.cols()});
  for (std::int64_t i = 0; i < s.rows; ++i) spmm_row(s, x, out, i);
  return out;
}

Tensor apply_activation(const Tensor& x, Activation kind) {
  Tensor out = x;
  for (double& v : out.data) v = activate(v, kind);
  return out;
}

std::vector<std::uint8_t> dilate_pass(const std::vector<std::uint8_t>& cells, std::int64_t h,
                                      std::int64_t w) {
  std::vector<std::uint8_t> out(cells.size(), 0);
  for (std::int64_t r = 0; r < h; ++r)
    for (std::int64_t c = 0; c < w; ++c) {
      std::uint8_t hit = 0;
      for (std::int64_t dr = -1; dr <= 1 && !hit; ++dr) {
        const std::int64_t rr = r + dr;
        if (rr < 0 || rr >= h) continue;
        for (std::int64_t dc = -1; dc <= 1; ++dc) {
          const std::int64_t cc = c + dc;
          if (cc < 0 || cc >= w) continue;
          if (cells[static_cast<std::size_t>(rr * w + cc)]) {
            hit = 1;
            break;
          }
        }
      }
      out[static_cast<std::size_t>(r * w + c)] = hit;
    }
  return out;
}

}  // namespace serial

}  // namespace mvgcn::numkit
