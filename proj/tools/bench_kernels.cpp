// Times the OpenMP kernels against their serial references and checks the
// outputs stay bitwise identical. Not a correctness gate; run by hand.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mvgcn/numkit/kernels.hpp"
#include "mvgcn/numkit/sparse.hpp"

using namespace mvgcn::numkit;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count() / reps;
}

Tensor random_tensor(std::mt19937_64& rng, std::int64_t r, std::int64_t c) {
  Tensor t = Tensor::zeros({r, c});
  for (double& v : t.data) v = static_cast<double>(rng()) / static_cast<double>(UINT64_MAX) - 0.5;
  return t;
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-24s serial %9.4f ms   parallel %9.4f ms   speedup %5.2fx   bitwise %s\n", name,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              identical ? "equal" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif

  std::mt19937_64 rng(12345);

  {
    const Tensor a = random_tensor(rng, 384, 384);
    const Tensor b = random_tensor(rng, 384, 384);
    Tensor out_serial, out_parallel;
    const double ts = seconds([&] { out_serial = serial::matmul(a, b); }, 3);
    const double tp = seconds([&] { out_parallel = matmul(a, b); }, 3);
    report("matmul 384x384x384", ts, tp, out_serial == out_parallel);
  }

  {
    const std::int64_t n = 4000, f = 64;
    std::vector<std::tuple<std::int64_t, std::int64_t, double>> trips;
    for (std::int64_t i = 0; i < n; ++i)
      for (int k = 0; k < 20; ++k)
        trips.emplace_back(i, static_cast<std::int64_t>(rng() % n), 1.0 + static_cast<double>(k));
    std::sort(trips.begin(), trips.end());
    trips.erase(std::unique(trips.begin(), trips.end(),
                            [](const auto& x, const auto& y) {
                              return std::get<0>(x) == std::get<0>(y) &&
                                     std::get<1>(x) == std::get<1>(y);
                            }),
                trips.end());
    const auto s = CsrMatrix::from_triplets(n, n, std::move(trips));
    const Tensor x = random_tensor(rng, n, f);
    Tensor out_serial, out_parallel;
    const double ts = seconds([&] { out_serial = serial::spmm(s, x); }, 5);
    const double tp = seconds([&] { out_parallel = spmm(s, x); }, 5);
    report("spmm 4000x4000 nnz~80k", ts, tp, out_serial == out_parallel);
  }

  {
    const Tensor x = random_tensor(rng, 2048, 2048);
    Tensor out_serial, out_parallel;
    const double ts = seconds([&] { out_serial = serial::apply_activation(x, Activation::Tanh); }, 3);
    const double tp = seconds([&] { out_parallel = apply_activation(x, Activation::Tanh); }, 3);
    report("tanh 4.2M elements", ts, tp, out_serial == out_parallel);
  }

  {
    const std::int64_t h = 1536, w = 1536;
    std::vector<std::uint8_t> grid(static_cast<std::size_t>(h * w), 0);
    for (auto& c : grid) c = (rng() % 100) < 5 ? 1 : 0;
    std::vector<std::uint8_t> out_serial, out_parallel;
    const double ts = seconds([&] { out_serial = serial::dilate_pass(grid, h, w); }, 5);
    const double tp = seconds([&] { out_parallel = dilate_pass(grid, h, w); }, 5);
    report("dilate 1536x1536", ts, tp, out_serial == out_parallel);
  }

  return 0;
}
