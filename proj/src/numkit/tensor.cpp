#include "mvgcn/numkit/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace mvgcn::numkit {

namespace {
std::int64_t product(const std::vector<std::int64_t>& dims) {
  std::int64_t n = 1;
  for (auto d : dims) {
    if (d < 0) throw std::invalid_argument("tensor extent must be nonnegative");
    n *= d;
  }
  return n;
}
}  // namespace

Tensor::Tensor(std::vector<std::int64_t> d, std::vector<double> v)
    : dims(std::move(d)), data(std::move(v)) {
  if (product(dims) != static_cast<std::int64_t>(data.size()))
    throw std::invalid_argument("tensor data length does not match extents");
}

Tensor Tensor::zeros(std::vector<std::int64_t> dims) {
  auto n = product(dims);
  return Tensor(std::move(dims), std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

Tensor Tensor::full(std::vector<std::int64_t> dims, double value) {
  auto n = product(dims);
  return Tensor(std::move(dims), std::vector<double>(static_cast<std::size_t>(n), value));
}

Tensor Tensor::scalar(double value) { return Tensor({1}, {value}); }

Tensor Tensor::row(std::vector<double> values) {
  auto n = static_cast<std::int64_t>(values.size());
  return Tensor({1, n}, std::move(values));
}

Tensor Tensor::matrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::int64_t r = static_cast<std::int64_t>(rows.size());
  std::int64_t c = r == 0 ? 0 : static_cast<std::int64_t>(rows.begin()->size());
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(r * c));
  for (const auto& row : rows) {
    if (static_cast<std::int64_t>(row.size()) != c)
      throw std::invalid_argument("ragged matrix initializer");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor({r, c}, std::move(data));
}

Tensor Tensor::identity(std::int64_t n) {
  Tensor t = zeros({n, n});
  for (std::int64_t i = 0; i < n; ++i) t.data[static_cast<std::size_t>(i * n + i)] = 1.0;
  return t;
}

std::int64_t Tensor::rows() const {
  if (rank() != 2) throw std::invalid_argument("rows(): tensor is not 2-D");
  return dims[0];
}

std::int64_t Tensor::cols() const {
  if (rank() != 2) throw std::invalid_argument("cols(): tensor is not 2-D");
  return dims[1];
}

double& Tensor::at(std::int64_t r, std::int64_t c) {
  return data[static_cast<std::size_t>(r * cols() + c)];
}

double Tensor::at(std::int64_t r, std::int64_t c) const {
  return data[static_cast<std::size_t>(r * cols() + c)];
}

bool Tensor::all_finite() const {
  for (double v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    worst = std::max(worst, std::fabs(a.data[i] - b.data[i]));
  return worst;
}

}  // namespace mvgcn::numkit
