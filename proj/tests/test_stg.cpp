#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mvgcn/mapseg/grid.hpp"
#include "mvgcn/stg/stgraph.hpp"
#include "oracles.hpp"

using namespace mvgcn::stg;
using mvgcn::mapseg::GeoPoint;
using mvgcn::numkit::Tensor;
using oracles::TestRng;

namespace {

TransitionCube cube_from(std::int64_t slices, std::int64_t regions,
                         const std::vector<std::tuple<int, int, int, int>>& entries) {
  auto cube = TransitionCube::zeros(slices, regions);
  for (const auto& [t, i, j, count] : entries) cube.at(t, i, j) = count;
  return cube;
}

}  // namespace

TEST_CASE("build_adjacency thresholds are strict") {
  // all-zero cube: no edges
  const auto empty = build_adjacency(TransitionCube::zeros(10, 3), 3.0, 0.1);
  CHECK(empty == Tensor::zeros({3, 3}));

  // count equal to alpha in every slice: still no edge
  auto boundary = TransitionCube::zeros(10, 2);
  for (int t = 0; t < 10; ++t) boundary.at(t, 0, 1) = 3;
  CHECK(build_adjacency(boundary, 3.0, 0.1) == Tensor::zeros({2, 2}));

  // 5 > 3 in 2 of 10 slices: ratio 0.2 > 0.1 places the edge
  const auto cube = cube_from(10, 2, {{0, 0, 1, 5}, {7, 1, 0, 5}});
  const auto adj = build_adjacency(cube, 3.0, 0.1);
  CHECK(adj.at(0, 1) == 1.0);
  CHECK(adj.at(1, 0) == 1.0);
  CHECK(adj.at(0, 0) == 0.0);
  CHECK(adj.at(1, 1) == 0.0);

  // ratio exactly equal to beta: no edge
  CHECK(build_adjacency(cube, 3.0, 0.2) == Tensor::zeros({2, 2}));

  CHECK_THROWS_AS(build_adjacency(TransitionCube{}, 3.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(build_adjacency(boundary, -1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(build_adjacency(boundary, 3.0, 1.5), std::invalid_argument);
}

TEST_CASE("build_adjacency symmetrizes directions and is monotone") {
  TestRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto cube = TransitionCube::zeros(12, 5);
    for (auto& c : cube.counts) c = rng.uniform_int(0, 6);
    const auto adj = build_adjacency(cube, 3.0, 0.25);

    for (std::int64_t i = 0; i < 5; ++i) {
      CHECK(adj.at(i, i) == 0.0);
      for (std::int64_t j = 0; j < 5; ++j) CHECK(adj.at(i, j) == adj.at(j, i));
    }

    // raising a transition count never removes an edge
    auto boosted = cube;
    boosted.at(rng.uniform_int(0, 11), rng.uniform_int(0, 4), rng.uniform_int(0, 4)) += 5;
    const auto adj_boosted = build_adjacency(boosted, 3.0, 0.25);
    for (std::size_t k = 0; k < adj.data.size(); ++k) CHECK(adj_boosted.data[k] >= adj.data[k]);

    // raising thresholds never adds one
    const auto adj_stricter = build_adjacency(cube, 4.0, 0.4);
    for (std::size_t k = 0; k < adj.data.size(); ++k) CHECK(adj_stricter.data[k] <= adj.data[k]);
  }
}

TEST_CASE("spatial_weights kernel anchors") {
  // place three points on one parallel so distances come out analytic-ish
  const std::vector<GeoPoint> pts{{0.0, 0.0}, {0.0, 0.1}, {0.0, 5.0}};
  const double d01 = mvgcn::mapseg::haversine_km(pts[0], pts[1]);

  // theta chosen so d01^2 == 2 theta^2
  const double theta = d01 / std::sqrt(2.0);
  const auto omega = spatial_weights(pts, theta, d01 * 1.5);

  CHECK(omega.at(0, 0) == 1.0);  // dist 0
  CHECK(omega.at(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(omega.at(0, 2) == 0.0);  // beyond kappa
  CHECK(omega.at(1, 2) == 0.0);

  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 3; ++j) {
      CHECK(omega.at(i, j) == omega.at(j, i));
      CHECK(omega.at(i, j) >= 0.0);
      CHECK(omega.at(i, j) <= 1.0);
    }

  CHECK_THROWS_AS(spatial_weights(pts, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(spatial_weights(pts, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("spatial_weights is longitude-translation invariant and permutation equivariant") {
  TestRng rng(13);
  std::vector<GeoPoint> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({rng.uniform(-0.2, 0.2), rng.uniform(10.0, 10.4)});
  const auto omega = spatial_weights(pts, 3.0, 25.0);

  std::vector<GeoPoint> shifted = pts;
  for (auto& p : shifted) p.lon += 42.0;
  CHECK(mvgcn::numkit::max_abs_diff(spatial_weights(shifted, 3.0, 25.0), omega) < 1e-12);

  std::vector<std::size_t> perm{3, 1, 5, 0, 4, 2};
  std::vector<GeoPoint> permuted;
  for (auto k : perm) permuted.push_back(pts[k]);
  const auto omega_p = spatial_weights(permuted, 3.0, 25.0);
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = 0; j < perm.size(); ++j)
      CHECK(omega_p.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) ==
            omega.at(static_cast<std::int64_t>(perm[i]), static_cast<std::int64_t>(perm[j])));
}

TEST_CASE("modify_adjacency masks omega by the binary adjacency") {
  const Tensor omega = Tensor::matrix({{1.0, 0.5, 0.3}, {0.5, 1.0, 0.8}, {0.3, 0.8, 1.0}});

  CHECK(modify_adjacency(Tensor::zeros({3, 3}), omega) == Tensor::zeros({3, 3}));

  Tensor all_edges = Tensor::full({3, 3}, 1.0);
  for (int i = 0; i < 3; ++i) all_edges.at(i, i) = 0.0;
  const auto masked = modify_adjacency(all_edges, omega);
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 3; ++j)
      CHECK(masked.at(i, j) == (i == j ? 0.0 : omega.at(i, j)));

  Tensor one_edge = Tensor::zeros({3, 3});
  one_edge.at(0, 1) = one_edge.at(1, 0) = 1.0;
  const auto s = modify_adjacency(one_edge, omega);
  CHECK(s.at(0, 1) == 0.5);
  CHECK(s.at(1, 0) == 0.5);
  std::int64_t nonzero = 0;
  for (double v : s.data) nonzero += v != 0.0 ? 1 : 0;
  CHECK(nonzero == 2);

  CHECK_THROWS_AS(modify_adjacency(Tensor::zeros({2, 2}), omega), std::invalid_argument);
}

TEST_CASE("propagation_matrix: isolated nodes and the two-node case") {
  const auto iso = propagation_matrix(Tensor::zeros({4, 4}));
  CHECK(iso.densify() == Tensor::identity(4));

  Tensor pair = Tensor::zeros({2, 2});
  pair.at(0, 1) = pair.at(1, 0) = 1.0;
  const auto prop = propagation_matrix(pair);
  const auto dense = prop.densify();
  for (double v : dense.data) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("propagation_matrix is symmetric with spectrum in [-1, 1]") {
  TestRng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = rng.uniform_int(2, 16);
    Tensor s = Tensor::zeros({n, n});
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = i + 1; j < n; ++j)
        if (rng.uniform(0.0, 1.0) < 0.4) {
          const double w = rng.uniform(0.05, 1.0);
          s.at(i, j) = w;
          s.at(j, i) = w;
        }
    const auto dense = propagation_matrix(s).densify();
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j)
        CHECK(std::fabs(dense.at(i, j) - dense.at(j, i)) <= 1e-12);

    const auto eig = oracles::jacobi_eigenvalues(dense);
    CHECK(eig.front() >= -1.0 - 1e-9);
    CHECK(eig.back() <= 1.0 + 1e-9);
  }
}

TEST_CASE("count_transitions places trips by start slice") {
  const auto regions = mvgcn::mapseg::station_regions({{0, 0}, {0, 1}, {1, 0}});
  const std::int64_t hour = 3600;

  CHECK(count_transitions({}, regions, hour).cube.slices == 0);

  TripRecord trip;
  trip.pre_mapped = true;
  trip.origin_region = 0;
  trip.dest_region = 1;
  trip.start_ts = 7 * hour;
  trip.end_ts = 7 * hour + 600;
  TimeSpan span{0, 10};
  const auto tally = count_transitions({trip}, regions, hour, span);
  CHECK(tally.cube.at(7, 0, 1) == 1);
  CHECK(tally.accepted == 1);
  std::int64_t total = 0;
  for (auto c : tally.cube.counts) total += c;
  CHECK(total == 1);

  // intra-region trip lands on the diagonal and never creates an edge
  TripRecord loop_trip = trip;
  loop_trip.dest_region = 0;
  const auto loop_tally = count_transitions({loop_trip}, regions, hour, span);
  CHECK(loop_tally.cube.at(7, 0, 0) == 1);
  CHECK(build_adjacency(loop_tally.cube, 0.0, 0.0) == Tensor::zeros({3, 3}));

  // unmappable destination is rejected
  TripRecord bad = trip;
  bad.dest_region = 99;
  const auto rejected = count_transitions({bad}, regions, hour, span);
  CHECK(rejected.rejected == 1);
  CHECK(rejected.accepted == 0);
}

TEST_CASE("build_stgraph wires the pieces together with auto kernel params") {
  TestRng rng(37);
  const std::int64_t n = 8;
  std::vector<GeoPoint> pts;
  for (std::int64_t i = 0; i < n; ++i)
    pts.push_back({39.8 + rng.uniform(0.0, 0.2), 116.2 + rng.uniform(0.0, 0.3)});

  auto cube = TransitionCube::zeros(50, n);
  for (std::int64_t t = 0; t < 50; ++t)
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j)
        if (i != j && rng.uniform(0.0, 1.0) < 0.3) cube.at(t, i, j) = rng.uniform_int(0, 9);

  const auto graph = build_stgraph(cube, pts, GraphParams{});
  CHECK(graph.n == n);
  CHECK(graph.theta > 0.0);
  CHECK(graph.kappa > 0.0);
  CHECK(graph.modified == modify_adjacency(graph.adjacency, graph.omega));

  // omega stays within [0,1] and S never introduces nonzeros outside A
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      CHECK(graph.omega.at(i, j) >= 0.0);
      CHECK(graph.omega.at(i, j) <= 1.0);
      if (graph.adjacency.at(i, j) == 0.0) CHECK(graph.modified.at(i, j) == 0.0);
    }

  // geoposition off: propagation equals the unweighted normalization exactly
  STGraph plain = graph;
  rebuild_propagation(plain, false);
  CHECK(plain.prop.densify() == propagation_matrix(graph.adjacency).densify());
}
