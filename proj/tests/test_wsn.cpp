#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "gsamp/errors.hpp"
#include "gsamp/harness.hpp"
#include "gsamp/linalg.hpp"

using namespace gsamp;

namespace {

Graph network(int n, Seed seed) {
  GraphSpec s;
  s.kind = GraphKind::random_geometric;
  s.n = n;
  s.radius = 0.2;
  s.seed = seed;
  return generate(s);
}

double sq(const Point& a, const Point& b) { return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y); }

}  // namespace

TEST_CASE("proposed power on a hand graph") {
  Graph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, {{0.0, 0.0}, {0.1, 0.0}, {0.3, 0.0}, {0.3, 0.3}});
  SamplingPlan plan;
  plan.nodes = {1};
  plan.hops = 1;
  auto p = proposed_power(g, plan, 5.0);
  CHECK(p.intra == doctest::Approx(0.01 + 0.04));
  CHECK(p.bs == 25.0);
  CHECK(p.total == p.intra + p.bs);

  plan.nodes = {0, 0};
  plan.hops = 2;
  p = proposed_power(g, plan, 2.0);
  CHECK(p.intra == doctest::Approx(2 * (0.01 + 0.05)));
  CHECK(p.bs == 8.0);

  plan.nodes = {0};
  plan.hops = 3;
  CHECK(proposed_power(g, plan, 1.0).intra == doctest::Approx(0.01 + 0.05 + 0.14));

  CHECK_THROWS_AS(proposed_power(Graph(4), plan, 1.0), InvalidArgument);
}

TEST_CASE("proposed power on a generated network") {
  Graph g = network(120, 3);
  auto plan = build_plan(g, 60, Strategy::insert_new, 1);
  auto p = proposed_power(g, plan, 5.0);
  CHECK(p.bs == 60 * 25.0);
  CHECK(p.total == p.intra + p.bs);
  // one hop: each sampling node gathers from its neighbors directly
  double oracle = 0.0;
  for (int r : plan.nodes)
    for (const auto& nb : g.neighbors(r)) oracle += sq(g.positions()[r], g.positions()[nb.node]);
  REQUIRE(plan.hops == 1);
  CHECK(p.intra == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("cluster allocation") {
  Graph g = network(250, 4);
  for (int heads : {5, 15, 30}) {
    for (int m : {100, 150, 200}) {
      auto d = draw_clusters(g, heads, m, 7, 100);
      CHECK(static_cast<int>(d.heads.size()) == heads);
      CHECK(std::is_sorted(d.heads.begin(), d.heads.end()));
      CHECK(std::accumulate(d.allocation.begin(), d.allocation.end(), 0) == m);
      std::vector<long long> size(heads, 0);
      for (int i = 0; i < 250; ++i) {
        ++size[d.cluster[i]];
        // nearest head
        const double mine = sq(g.positions()[i], g.positions()[d.heads[d.cluster[i]]]);
        for (int h : d.heads) CHECK(mine <= sq(g.positions()[i], g.positions()[h]));
      }
      for (int c = 0; c < heads; ++c) CHECK(d.cluster[d.heads[c]] == c);
      // largest remainder: floor or floor + 1, and bumps go to the larger remainders
      long long min_bumped = 250, max_plain = -1;
      for (int c = 0; c < heads; ++c) {
        const long long base = m * size[c] / 250, rem = m * size[c] % 250;
        CHECK(d.allocation[c] >= base);
        CHECK(d.allocation[c] <= base + 1);
        CHECK(d.allocation[c] > 0);
        if (d.allocation[c] == base + 1) min_bumped = std::min(min_bumped, rem);
        else max_plain = std::max(max_plain, rem);
      }
      CHECK(min_bumped >= max_plain);
    }
  }
  auto a = draw_clusters(g, 15, 100, 3, 100);
  auto b = draw_clusters(g, 15, 100, 3, 100);
  CHECK(a.heads == b.heads);
  CHECK(a.allocation == b.allocation);
}

TEST_CASE("cluster redraws and infeasibility") {
  Graph g = network(50, 5);
  // every node a head but fewer measurements than nodes: always a zero allocation
  CHECK_THROWS_AS(draw_clusters(g, 50, 40, 1, 3), Infeasible);
  auto all = draw_clusters(g, 50, 50, 1, 0);
  CHECK(all.redraws == 0);
  CHECK(cluster_power(g, all, 5.0).intra == 0.0);
  CHECK(cluster_power(g, all, 5.0).bs == 50 * 25.0);
  CHECK_THROWS_AS(draw_clusters(g, 0, 10, 1, 3), InvalidArgument);
  CHECK_THROWS_AS(draw_clusters(g, 5, 51, 1, 3), InvalidArgument);
}

TEST_CASE("cluster operator and power") {
  Graph g = network(100, 6);
  auto d = draw_clusters(g, 5, 40, 2, 100);
  auto op = cluster_operator(g, d, 9);
  REQUIRE(op.rows() == 40);
  int row = 0;
  for (int c = 0; c < 5; ++c)
    for (int r = 0; r < d.allocation[c]; ++r, ++row)
      for (int j = 0; j < 100; ++j) CHECK((op.phi(row, j) != 0.0) == (d.cluster[j] == c));
  CHECK(cluster_operator(g, d, 9).phi == op.phi);

  double oracle = 0.0;
  for (int i = 0; i < 100; ++i) oracle += d.allocation[d.cluster[i]] * sq(g.positions()[i], g.positions()[d.heads[d.cluster[i]]]);
  auto p = cluster_power(g, d, 5.0);
  CHECK(p.intra == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(p.bs == 40 * 25.0);
  CHECK(p.total == p.intra + p.bs);
}

TEST_CASE("spatial dct") {
  Graph g = network(80, 7);
  OrthoBasis b = spatial_dct_basis(g);
  CHECK(max_abs(b.u.transpose() * b.u - Eigen::MatrixXd::Identity(80, 80)) < 1e-12);
  // the leftmost node takes the first DCT row
  int left = 0;
  for (int i = 1; i < 80; ++i)
    if (g.positions()[i].x < g.positions()[left].x) left = i;
  CHECK(max_abs(b.u.row(left) - dct_basis(80).u.row(0)) == 0.0);
  CHECK_THROWS_AS(spatial_dct_basis(Graph(3)), InvalidArgument);
}

TEST_CASE("small wsn experiment") {
  WsnScenario s;
  s.n = 60;
  s.k = 4;
  s.cluster_heads = {3};
  s.m_values = {30, 40};
  s.trials = 4;
  s.solver.relaxation = 1.8;
  s.solver.abs_tol = s.solver.rel_tol = 1e-6;
  auto rows = wsn_experiment(s);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.mean_bs == r.m * 25.0);
    CHECK(r.mean_power == doctest::Approx(r.mean_intra + r.mean_bs));
    CHECK(r.trials + r.failed == 4);
    CHECK(r.mse_db >= r.mean_mse_db - 1e-9);  // Jensen
  }
  CHECK(rows[0].method == "proposed");
  CHECK(rows[2].method == "cluster");
  CHECK(rows[2].clusters == 3);
  auto serial = wsn_experiment(s, Exec::serial);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(serial[i].mean_power == rows[i].mean_power);
    CHECK(serial[i].mean_mse_db == rows[i].mean_mse_db);
  }
  CHECK(to_json(wsn_scenario_from_json(to_json(s))) == to_json(s));
  auto j = to_json(s);
  j["bs_distance"] = 3;
  CHECK_THROWS_AS(wsn_scenario_from_json(j), InvalidArgument);
  s.m_values = {40, 30};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
}
