#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace mvgcn::numkit {

/// Dense row-major tensor of 64-bit reals. Rank-1 and rank-2 cover almost
/// everything in this codebase; higher ranks only pass through reshape.
struct Tensor {
  std::vector<std::int64_t> dims;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::vector<std::int64_t> d, std::vector<double> v);

  static Tensor zeros(std::vector<std::int64_t> dims);
  static Tensor full(std::vector<std::int64_t> dims, double value);
  static Tensor scalar(double value);
  static Tensor row(std::vector<double> values);
  static Tensor matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor identity(std::int64_t n);

  std::int64_t rank() const { return static_cast<std::int64_t>(dims.size()); }
  std::int64_t numel() const { return static_cast<std::int64_t>(data.size()); }
  bool empty() const { return data.empty() && dims.empty(); }

  // 2-D accessors; throw unless rank()==2.
  std::int64_t rows() const;
  std::int64_t cols() const;
  double& at(std::int64_t r, std::int64_t c);
  double at(std::int64_t r, std::int64_t c) const;

  bool same_shape(const Tensor& other) const { return dims == other.dims; }
  bool all_finite() const;

  bool operator==(const Tensor& other) const = default;
};

/// Largest absolute elementwise difference; shapes must match.
double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace mvgcn::numkit
