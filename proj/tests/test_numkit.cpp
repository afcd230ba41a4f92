#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mvgcn/numkit/adam.hpp"
#include "mvgcn/numkit/finite_diff.hpp"
#include "mvgcn/numkit/kernels.hpp"
#include "mvgcn/numkit/sparse.hpp"
#include "mvgcn/numkit/tape.hpp"
#include "mvgcn/numkit/tensor.hpp"
#include "mvgcn/numkit/tensor_io.hpp"
#include "oracles.hpp"

using namespace mvgcn::numkit;
using oracles::TestRng;

namespace {

void check_grad_close(const Tensor& analytic, const Tensor& fd, double rtol = 1e-4,
                      double atol = 1e-7) {
  REQUIRE(analytic.same_shape(fd));
  for (std::size_t i = 0; i < analytic.data.size(); ++i) {
    const double a = analytic.data[i];
    const double f = fd.data[i];
    const double bound = rtol * std::max(std::fabs(a), std::fabs(f)) + atol;
    CHECK(std::fabs(a - f) <= bound);
  }
}

// Pushes values away from zero so relu probes never straddle the kink.
Tensor away_from_zero(Tensor t, double margin) {
  for (double& v : t.data) v += v >= 0.0 ? margin : -margin;
  return t;
}

}  // namespace

TEST_CASE("matmul identity and hand products") {
  const Tensor b = Tensor::matrix({{5}, {6}});
  CHECK(matmul(Tensor::identity(2), b) == b);
  CHECK(matmul(Tensor::matrix({{1, 2}, {3, 4}}), b) == Tensor::matrix({{17}, {39}}));
  CHECK(matmul(Tensor::zeros({2, 2}), b) == Tensor::zeros({2, 1}));
  CHECK_THROWS_AS(matmul(Tensor::zeros({2, 3}), Tensor::zeros({2, 3})), std::invalid_argument);
}

TEST_CASE("matmul parallel kernel matches serial reference bitwise") {
  TestRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = rng.uniform_int(1, 40);
    const auto k = rng.uniform_int(1, 40);
    const auto m = rng.uniform_int(1, 40);
    const Tensor a = rng.tensor({n, k}, -2.0, 2.0);
    const Tensor b = rng.tensor({k, m}, -2.0, 2.0);
    CHECK(matmul(a, b) == serial::matmul(a, b));
    check_grad_close(matmul(a, b), oracles::naive_matmul(a, b), 1e-10, 1e-12);
  }
}

TEST_CASE("spmm basics") {
  const Tensor x = Tensor::matrix({{1, 2}, {3, 4}});
  CHECK(spmm(CsrMatrix::from_triplets(2, 2, {}), x) == Tensor::zeros({2, 2}));
  CHECK(spmm(CsrMatrix::identity(2), x) == x);

  const auto single = CsrMatrix::from_triplets(2, 2, {{0, 1, 2.0}});
  CHECK(spmm(single, x) == Tensor::matrix({{6, 8}, {0, 0}}));
  CHECK_THROWS_AS(spmm(single, Tensor::zeros({3, 2})), std::invalid_argument);
}

TEST_CASE("spmm equals dense product exactly on random sparse up to 64x64") {
  TestRng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = rng.uniform_int(1, 64);
    const auto f = rng.uniform_int(1, 8);
    std::vector<std::tuple<std::int64_t, std::int64_t, double>> trips;
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j)
        if (rng.uniform(0.0, 1.0) < 0.15) trips.emplace_back(i, j, rng.uniform(-3.0, 3.0));
    const auto s = CsrMatrix::from_triplets(n, n, std::move(trips));
    const Tensor x = rng.tensor({n, f}, -3.0, 3.0);
    const Tensor via_sparse = spmm(s, x);
    const Tensor via_dense = matmul(s.densify(), x);
    CHECK(via_sparse == via_dense);
    CHECK(via_sparse == serial::spmm(s, x));
  }
}

TEST_CASE("csr construction rejects duplicates and drops zeros") {
  CHECK_THROWS_AS(CsrMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}),
                  std::invalid_argument);
  const auto m = CsrMatrix::from_triplets(2, 2, {{0, 0, 0.0}, {1, 1, 3.0}});
  CHECK(m.nnz() == 1);
}

TEST_CASE("activations") {
  const Tensor x = Tensor::row({-1.0, 0.0, 2.0});
  CHECK(apply_activation(x, Activation::Relu) == Tensor::row({0.0, 0.0, 2.0}));
  CHECK(apply_activation(Tensor::scalar(0.0), Activation::Tanh).data[0] == 0.0);
  CHECK(apply_activation(Tensor::scalar(0.0), Activation::Sigmoid).data[0] == 0.5);

  TestRng rng(5);
  const Tensor r = rng.tensor({4, 7}, -10.0, 10.0);
  for (double v : apply_activation(r, Activation::Tanh).data) CHECK((v > -1.0 && v < 1.0));
  for (double v : apply_activation(r, Activation::Sigmoid).data) CHECK((v > 0.0 && v < 1.0));
  for (double v : apply_activation(r, Activation::Relu).data) CHECK(v >= 0.0);
  CHECK(apply_activation(r, Activation::Tanh) == serial::apply_activation(r, Activation::Tanh));
}

TEST_CASE("backward differentiates x*x") {
  Tape tape;
  const auto x = tape.leaf(Tensor::matrix({{3.0}}), true);
  const auto y = tape.matmul(x, x);
  const auto grads = tape.backward(y);
  CHECK(grads[x].data[0] == doctest::Approx(6.0).epsilon(1e-12));

  const Tensor fd = finite_diff_grad(
      [](const Tensor& t) { return t.data[0] * t.data[0]; }, Tensor::matrix({{3.0}}), 1e-5);
  CHECK(std::fabs(grads[x].data[0] - fd.data[0]) < 1e-6);
}

TEST_CASE("backward ignores constant subgraphs") {
  Tape tape;
  const auto x = tape.leaf(Tensor::scalar(2.0), true);
  const auto c = tape.leaf(Tensor::matrix({{5.0}}), true);
  const auto unused = tape.matmul(c, c);
  (void)unused;
  const auto loss = tape.huber_sum(x, Tensor::scalar(0.0), 1e9);
  const auto grads = tape.backward(loss);
  CHECK(grads[c].empty());  // no dependence recorded
  CHECK(grads[x].data[0] == doctest::Approx(2.0));
}

TEST_CASE("backward rejects bad seeds and ids") {
  Tape tape;
  const auto x = tape.leaf(Tensor::row({1.0, 2.0}), true);
  CHECK_THROWS_AS(tape.backward(x), std::invalid_argument);  // non-scalar
  CHECK_THROWS_AS(tape.backward(42), std::invalid_argument);
  CHECK_THROWS_AS(tape.matmul(0, 99), std::invalid_argument);
}

TEST_CASE("per-op gradients match central finite differences") {
  TestRng rng(101);
  const double h = 1e-5;

  auto loss_of = [](Tape& tape, Tape::NodeId out) {
    return tape.huber_sum(out, Tensor::zeros(tape.value(out).dims), 1e9);
  };

  for (int point = 0; point < 100; ++point) {
    const auto n = rng.uniform_int(1, 5);
    const auto m = rng.uniform_int(1, 5);

    SUBCASE("") {}  // keep doctest quiet about loop structure

    // matmul: d/dA and d/dB of quadratic loss
    {
      const Tensor a0 = rng.tensor({n, m}, -2.0, 2.0);
      const Tensor b0 = rng.tensor({m, n}, -2.0, 2.0);
      Tape tape;
      const auto a = tape.leaf(a0, true);
      const auto b = tape.leaf(b0, true);
      const auto grads = tape.backward(loss_of(tape, tape.matmul(a, b)));
      auto eval_a = [&](const Tensor& t) {
        Tape probe;
        const auto pa = probe.leaf(t, true);
        const auto pb = probe.leaf(b0, false);
        return probe.value(probe.huber_sum(probe.matmul(pa, pb),
                                           Tensor::zeros({t.rows(), b0.cols()}), 1e9))
            .data[0];
      };
      check_grad_close(grads[a], finite_diff_grad(eval_a, a0, h));
    }

    // activations, hadamard, add, scale chained together
    {
      const Tensor x0 = away_from_zero(rng.tensor({n, m}, -1.5, 1.5), 0.05);
      const Tensor w0 = rng.tensor({n, m}, -1.5, 1.5);
      auto build = [&](Tape& tape, Tape::NodeId x) {
        const auto w = tape.leaf(w0, false);
        const auto relu = tape.activation(x, Activation::Relu);
        const auto th = tape.activation(tape.hadamard(relu, w), Activation::Tanh);
        const auto sg = tape.activation(tape.add(th, x), Activation::Sigmoid);
        return tape.scale(sg, 1.7);
      };
      Tape tape;
      const auto x = tape.leaf(x0, true);
      const auto grads = tape.backward(loss_of(tape, build(tape, x)));
      auto eval_x = [&](const Tensor& t) {
        Tape probe;
        const auto px = probe.leaf(t, true);
        const auto out = build(probe, px);
        return probe.value(probe.huber_sum(out, Tensor::zeros(probe.value(out).dims), 1e9))
            .data[0];
      };
      check_grad_close(grads[x], finite_diff_grad(eval_x, x0, h));
    }

    // spmm, concat_cols, reshape
    {
      std::vector<std::tuple<std::int64_t, std::int64_t, double>> trips;
      for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j)
          if (rng.uniform(0.0, 1.0) < 0.4) trips.emplace_back(i, j, rng.uniform(-2.0, 2.0));
      const auto s = CsrMatrix::from_triplets(n, n, std::move(trips));
      const Tensor x0 = rng.tensor({n, m}, -2.0, 2.0);
      const Tensor y0 = rng.tensor({n, 2}, -2.0, 2.0);
      auto build = [&](Tape& tape, Tape::NodeId x) {
        const auto y = tape.leaf(y0, false);
        const auto cc = tape.concat_cols(tape.spmm(s, x), y);
        return tape.reshape(cc, {n * (m + 2)});
      };
      Tape tape;
      const auto x = tape.leaf(x0, true);
      const auto grads = tape.backward(loss_of(tape, build(tape, x)));
      auto eval_x = [&](const Tensor& t) {
        Tape probe;
        const auto px = probe.leaf(t, true);
        const auto out = build(probe, px);
        return probe.value(probe.huber_sum(out, Tensor::zeros(probe.value(out).dims), 1e9))
            .data[0];
      };
      check_grad_close(grads[x], finite_diff_grad(eval_x, x0, h));
    }
  }
}

TEST_CASE("huber loss values and gradient branches") {
  auto huber_at = [](double pred, double truth, double delta) {
    Tape tape;
    const auto p = tape.leaf(Tensor::scalar(pred), true);
    return tape.value(tape.huber_sum(p, Tensor::scalar(truth), delta)).data[0];
  };
  CHECK(huber_at(0.0, 0.0, 1.0) == 0.0);
  CHECK(huber_at(0.5, 0.0, 1.0) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(huber_at(2.0, 0.0, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
  // both branches meet at |e| = delta
  CHECK(huber_at(1.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));

  // linear branch gradient is +-delta
  Tape tape;
  const auto p = tape.leaf(Tensor::row({3.0, -3.0}), true);
  const auto grads = tape.backward(tape.huber_sum(p, Tensor::row({0.0, 0.0}), 1.0));
  CHECK(grads[p] == Tensor::row({1.0, -1.0}));

  // quadratic branch matches finite differences
  const Tensor x0 = Tensor::row({0.3, -0.6});
  Tape tq;
  const auto q = tq.leaf(x0, true);
  const auto g2 = tq.backward(tq.huber_sum(q, Tensor::row({0.1, 0.0}), 1.0));
  const Tensor fd = finite_diff_grad(
      [&](const Tensor& t) {
        Tape probe;
        const auto pp = probe.leaf(t, true);
        return probe.value(probe.huber_sum(pp, Tensor::row({0.1, 0.0}), 1.0)).data[0];
      },
      x0, 1e-5);
  check_grad_close(g2[q], fd);
}

TEST_CASE("tape replay reproduces recorded values bitwise") {
  TestRng rng(7);
  Tape tape;
  const auto a = tape.leaf(rng.tensor({4, 4}, -1.0, 1.0), true);
  const auto b = tape.leaf(rng.tensor({4, 4}, -1.0, 1.0), true);
  const auto s = CsrMatrix::from_triplets(4, 4, {{0, 1, 0.5}, {2, 3, -1.25}, {3, 3, 2.0}});
  const auto c = tape.activation(tape.matmul(a, b), Activation::Tanh);
  const auto d = tape.add(tape.spmm(s, c), tape.hadamard(a, b));
  const auto loss = tape.huber_sum(d, Tensor::zeros({4, 4}), 1.0);
  const auto replayed = tape.replay();
  for (std::size_t i = 0; i < replayed.size(); ++i)
    CHECK(replayed[i] == tape.value(static_cast<Tape::NodeId>(i)));
  CHECK(replayed[loss] == tape.value(loss));
}

TEST_CASE("adam zero gradient is the identity for any state") {
  TestRng rng(31);
  Tensor p = rng.tensor({3, 3}, -1.0, 1.0);
  const Tensor p_before = p;
  AdamState state = AdamState::init({&p});
  // dirty the accumulators first
  state.step = 17;
  state.m[0] = rng.tensor({3, 3}, -0.5, 0.5);
  state.v[0] = rng.tensor({3, 3}, 0.0, 0.5);
  const AdamState state_before = state;

  adam_step({&p}, {Tensor::zeros({3, 3})}, state, 0.01);
  CHECK(p == p_before);
  CHECK(state.m[0] == state_before.m[0]);
  CHECK(state.v[0] == state_before.v[0]);
  CHECK(state.step == 18);
}

TEST_CASE("adam first step moves by -lr * sign(g)") {
  // |g| must dwarf epsilon for the sign approximation to hold at 1e-6*lr
  for (double g : {0.7, -0.5, 123.0}) {
    Tensor p = Tensor::scalar(1.0);
    AdamState state = AdamState::init({&p});
    adam_step({&p}, {Tensor::scalar(g)}, state, 0.1);
    const double delta = p.data[0] - 1.0;
    CHECK(std::fabs(delta - (-0.1 * (g > 0 ? 1.0 : -1.0))) < 1e-6 * 0.1);
  }
}

TEST_CASE("adam runs are deterministic and validate inputs") {
  auto run = [] {
    TestRng rng(77);
    Tensor p = rng.tensor({8}, -1.0, 1.0);
    AdamState state = AdamState::init({&p});
    for (int i = 0; i < 25; ++i) {
      const Tensor g = rng.tensor({8}, -1.0, 1.0);
      adam_step({&p}, {g}, state, 3e-3);
    }
    return p;
  };
  CHECK(run() == run());

  Tensor p = Tensor::scalar(0.0);
  AdamState state = AdamState::init({&p});
  CHECK_THROWS_AS(adam_step({&p}, {Tensor::scalar(1.0)}, state, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(adam_step({&p}, {Tensor::row({1.0, 2.0})}, state, 0.1), std::invalid_argument);
}

TEST_CASE("finite difference oracle sanity") {
  const Tensor x = Tensor::scalar(3.0);
  const Tensor g = finite_diff_grad(
      [](const Tensor& t) { return t.data[0] * t.data[0]; }, x, 1e-5);
  CHECK(std::fabs(g.data[0] - 6.0) < 1e-6);

  const Tensor c = finite_diff_grad([](const Tensor&) { return 4.2; }, Tensor::row({1, 2, 3}), 1e-5);
  CHECK(c == Tensor::zeros({1, 3}));

  const Tensor s = finite_diff_grad(
      [](const Tensor& t) {
        double acc = 0.0;
        for (double v : t.data) acc += v;
        return acc;
      },
      Tensor::row({4.0, -1.0, 0.5}), 1e-5);
  for (double v : s.data) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dtn1 round trip is bitwise and corrupt files are rejected") {
  TestRng rng(9);
  const Tensor t = rng.tensor({3, 5, 2}, -100.0, 100.0);
  std::stringstream buf;
  write_dtn1(buf, t);
  CHECK(read_dtn1(buf) == t);

  std::stringstream bad("XXXX");
  CHECK_THROWS_AS(read_dtn1(bad), std::runtime_error);

  std::stringstream full;
  write_dtn1(full, t);
  const std::string bytes = full.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(read_dtn1(truncated), std::runtime_error);
}

TEST_CASE("tensor invariants") {
  CHECK_THROWS_AS(Tensor({2, 2}, {1.0}), std::invalid_argument);
  Tensor t = Tensor::zeros({2, 2});
  CHECK(t.all_finite());
  t.data[1] = std::nan("");
  CHECK(!t.all_finite());
}
