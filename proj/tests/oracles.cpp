#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace oracles {

using mvgcn::numkit::Tensor;

double TestRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(0.0, 1.0);
  while (u1 <= 1e-300) u1 = uniform(0.0, 1.0);
  const double u2 = uniform(0.0, 1.0);
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

Tensor TestRng::tensor(std::vector<std::int64_t> dims, double lo, double hi) {
  Tensor t = Tensor::zeros(std::move(dims));
  for (double& v : t.data) v = uniform(lo, hi);
  return t;
}

Tensor naive_matmul(const Tensor& a, const Tensor& b) {
  Tensor out = Tensor::zeros({a.rows(), b.cols()});
  for (std::int64_t k = 0; k < a.cols(); ++k)
    for (std::int64_t i = 0; i < a.rows(); ++i)
      for (std::int64_t j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
  return out;
}

std::vector<double> jacobi_eigenvalues(const Tensor& sym, int sweeps) {
  const std::int64_t n = sym.rows();
  Tensor a = sym;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double off = 0.0;
    for (std::int64_t p = 0; p < n; ++p)
      for (std::int64_t q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
    if (off < 1e-26) break;
    for (std::int64_t p = 0; p < n; ++p) {
      for (std::int64_t q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::int64_t k = 0; k < n; ++k) {
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (std::int64_t k = 0; k < n; ++k) {
          const double apk = a.at(p, k);
          const double aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a.at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> rank_with_ties(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman_reference(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = rank_with_ties(x);
  const auto ry = rank_with_ties(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("spearman oracle: constant series");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<int> flood_fill_blank_labels(const std::vector<std::uint8_t>& cells, std::int64_t h,
                                         std::int64_t w) {
  std::vector<int> labels(cells.size(), -1);
  int next = 0;
  for (std::int64_t start = 0; start < h * w; ++start) {
    if (cells[static_cast<std::size_t>(start)] != 0 || labels[static_cast<std::size_t>(start)] != -1)
      continue;
    std::deque<std::int64_t> queue{start};
    labels[static_cast<std::size_t>(start)] = next;
    while (!queue.empty()) {
      const std::int64_t cur = queue.front();
      queue.pop_front();
      const std::int64_t r = cur / w, c = cur % w;
      const std::int64_t nbrs[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& nb : nbrs) {
        if (nb[0] < 0 || nb[0] >= h || nb[1] < 0 || nb[1] >= w) continue;
        const std::int64_t idx = nb[0] * w + nb[1];
        if (cells[static_cast<std::size_t>(idx)] == 0 && labels[static_cast<std::size_t>(idx)] == -1) {
          labels[static_cast<std::size_t>(idx)] = next;
          queue.push_back(idx);
        }
      }
    }
    ++next;
  }
  return labels;
}

int count_foreground_components(const std::vector<std::uint8_t>& cells, std::int64_t h,
                                std::int64_t w) {
  std::vector<std::uint8_t> seen(cells.size(), 0);
  int count = 0;
  for (std::int64_t start = 0; start < h * w; ++start) {
    if (!cells[static_cast<std::size_t>(start)] || seen[static_cast<std::size_t>(start)]) continue;
    ++count;
    std::deque<std::int64_t> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!queue.empty()) {
      const std::int64_t cur = queue.front();
      queue.pop_front();
      const std::int64_t r = cur / w, c = cur % w;
      for (std::int64_t dr = -1; dr <= 1; ++dr)
        for (std::int64_t dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const std::int64_t rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
          const std::int64_t idx = rr * w + cc;
          if (cells[static_cast<std::size_t>(idx)] && !seen[static_cast<std::size_t>(idx)]) {
            seen[static_cast<std::size_t>(idx)] = 1;
            queue.push_back(idx);
          }
        }
    }
  }
  return count;
}

std::vector<std::uint8_t> thinning_reference(std::vector<std::uint8_t> cells, std::int64_t h,
                                             std::int64_t w) {
  auto px = [&](std::int64_t r, std::int64_t c) -> int {
    if (r < 0 || r >= h || c < 0 || c >= w) return 0;
    return cells[static_cast<std::size_t>(r * w + c)] ? 1 : 0;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int phase = 0; phase < 2; ++phase) {
      std::vector<std::int64_t> kill;
      for (std::int64_t r = 0; r < h; ++r) {
        for (std::int64_t c = 0; c < w; ++c) {
          if (!px(r, c)) continue;
          const int p2 = px(r - 1, c), p3 = px(r - 1, c + 1), p4 = px(r, c + 1);
          const int p5 = px(r + 1, c + 1), p6 = px(r + 1, c), p7 = px(r + 1, c - 1);
          const int p8 = px(r, c - 1), p9 = px(r - 1, c - 1);
          const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
          if (b < 2 || b > 6) continue;
          const int seq[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
          int a = 0;
          for (int k = 0; k < 8; ++k)
            if (seq[k] == 0 && seq[k + 1] == 1) ++a;
          if (a != 1) continue;
          if (phase == 0) {
            if (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0) continue;
          } else {
            if (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0) continue;
          }
          kill.push_back(r * w + c);
        }
      }
      // survivor guard: only delete pixels that keep an unflagged neighbour
      std::vector<std::uint8_t> flagged(cells.size(), 0);
      for (auto idx : kill) flagged[static_cast<std::size_t>(idx)] = 1;
      for (auto idx : kill) {
        const std::int64_t r = idx / w, c = idx % w;
        bool anchored = false;
        for (std::int64_t dr = -1; dr <= 1 && !anchored; ++dr)
          for (std::int64_t dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const std::int64_t rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
            const std::size_t nidx = static_cast<std::size_t>(rr * w + cc);
            if (px(rr, cc) && !flagged[nidx]) {
              anchored = true;
              break;
            }
          }
        if (anchored) {
          cells[static_cast<std::size_t>(idx)] = 0;
          changed = true;
        }
      }
    }
  }
  return cells;
}

double rmse_reference(const std::vector<double>& truth, const std::vector<double>& pred) {
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    acc += (truth[i] - pred[i]) * (truth[i] - pred[i]);
  return std::sqrt(acc / static_cast<double>(truth.size()));
}

double mae_reference(const std::vector<double>& truth, const std::vector<double>& pred) {
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) acc += std::fabs(truth[i] - pred[i]);
  return acc / static_cast<double>(truth.size());
}

}  // namespace oracles
