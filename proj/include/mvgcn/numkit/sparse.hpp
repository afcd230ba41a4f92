#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "mvgcn/numkit/tensor.hpp"

namespace mvgcn::numkit {

/// Sparse matrix in compressed-row layout. Column indices are strictly
/// increasing within each row and duplicates are rejected at construction.
struct CsrMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::int64_t> row_ptr;  // rows + 1 offsets
  std::vector<std::int64_t> col_idx;
  std::vector<double> values;

  CsrMatrix() = default;

  /// Builds from (row, col, value) triplets in any order. Exact zeros are
  /// dropped; duplicate coordinates throw.
  static CsrMatrix from_triplets(std::int64_t rows, std::int64_t cols,
                                 std::vector<std::tuple<std::int64_t, std::int64_t, double>> triplets);
  static CsrMatrix from_dense(const Tensor& dense);
  static CsrMatrix identity(std::int64_t n);

  std::int64_t nnz() const { return static_cast<std::int64_t>(values.size()); }
  Tensor densify() const;
  bool all_finite() const;
};

}  // namespace mvgcn::numkit
