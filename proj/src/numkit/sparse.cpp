#include "mvgcn/numkit/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvgcn::numkit {

CsrMatrix CsrMatrix::from_triplets(
    std::int64_t rows, std::int64_t cols,
    std::vector<std::tuple<std::int64_t, std::int64_t, double>> triplets) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("csr: negative extent");
  std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });

  CsrMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);

  std::int64_t prev_r = -1, prev_c = -1;
  for (const auto& [r, c, v] : triplets) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::invalid_argument("csr: triplet index out of range");
    if (r == prev_r && c == prev_c) throw std::invalid_argument("csr: duplicate (row, col) entry");
    prev_r = r;
    prev_c = c;
    if (v == 0.0) continue;
    if (!std::isfinite(v)) throw std::invalid_argument("csr: non-finite value");
    m.col_idx.push_back(c);
    m.values.push_back(v);
    ++m.row_ptr[static_cast<std::size_t>(r) + 1];
  }
  for (std::size_t i = 1; i < m.row_ptr.size(); ++i) m.row_ptr[i] += m.row_ptr[i - 1];
  return m;
}

CsrMatrix CsrMatrix::from_dense(const Tensor& dense) {
  std::vector<std::tuple<std::int64_t, std::int64_t, double>> trips;
  for (std::int64_t i = 0; i < dense.rows(); ++i)
    for (std::int64_t j = 0; j < dense.cols(); ++j)
      if (dense.at(i, j) != 0.0) trips.emplace_back(i, j, dense.at(i, j));
  return from_triplets(dense.rows(), dense.cols(), std::move(trips));
}

CsrMatrix CsrMatrix::identity(std::int64_t n) {
  std::vector<std::tuple<std::int64_t, std::int64_t, double>> trips;
  trips.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
  return from_triplets(n, n, std::move(trips));
}

Tensor CsrMatrix::densify() const {
  Tensor dense = Tensor::zeros({rows, cols});
  for (std::int64_t i = 0; i < rows; ++i)
    for (auto k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      dense.at(i, col_idx[static_cast<std::size_t>(k)]) = values[static_cast<std::size_t>(k)];
  return dense;
}

bool CsrMatrix::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace mvgcn::numkit
