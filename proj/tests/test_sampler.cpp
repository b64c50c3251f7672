#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"

#include "gsamp/errors.hpp"
#include "gsamp/graph.hpp"
#include "gsamp/linalg.hpp"
#include "gsamp/sampler.hpp"

using namespace gsamp;

namespace {

Graph make(GraphKind kind, int n, Seed seed = 1) {
  GraphSpec s;
  s.kind = kind;
  s.n = n;
  s.seed = seed;
  return generate(s);
}

Graph community100(Seed seed) {
  GraphSpec s;
  s.kind = GraphKind::community;
  s.communities = 20;
  s.p_intra = 0.8;
  s.p_inter = 0.002;
  s.seed = seed;
  return generate(s);
}

// brute-force insertion: count closed neighbors at the current minimum
// multiplicity for every unsampled node, keep the first maximum
int oracle_pick(const Graph& g, const std::vector<int>& mult, const std::vector<int>& sampled) {
  const int gmin = *std::min_element(mult.begin(), mult.end());
  int best = -1, best_score = -1;
  for (int i = 0; i < g.size(); ++i) {
    if (std::find(sampled.begin(), sampled.end(), i) != sampled.end()) continue;
    int score = 0;
    for (int j = 0; j < g.size(); ++j)
      if ((j == i || g.has_edge(i, j)) && mult[j] == gmin) ++score;
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("multiplicities") {
  Graph k5 = make(GraphKind::complete, 5);
  std::vector<int> all{0, 1, 2, 3, 4};
  for (int g : node_multiplicities(k5, all)) CHECK(g == 5);

  Graph star = make(GraphKind::star, 7);
  std::vector<int> center{0};
  for (int g : node_multiplicities(star, center)) CHECK(g == 1);

  Graph p3 = make(GraphKind::path, 3);
  CHECK(node_multiplicities(p3, std::vector<int>{0, 2}) == std::vector<int>{1, 2, 1});
  // repetitions count
  CHECK(node_multiplicities(p3, std::vector<int>{1, 1}) == std::vector<int>{2, 2, 2});
  CHECK_THROWS_AS(node_multiplicities(p3, std::vector<int>{}), InvalidArgument);
}

TEST_CASE("plan with m equal to the dominating set size") {
  Graph g = community100(3);
  const auto d = greedy_dominating_set(g);
  for (auto s : {Strategy::insert_new, Strategy::repeat_dominating}) {
    auto plan = build_plan(g, static_cast<int>(d.size()), s, 1);
    CHECK(plan.strategy == Strategy::exact);
    CHECK(plan.hops == 1);
    CHECK(plan.nodes == d.nodes);
    CHECK(plan.min_multiplicity() >= 1);
  }
}

TEST_CASE("insert-new with m = n samples every node") {
  Graph g = make(GraphKind::random_geometric, 40, 2);
  auto plan = build_plan(g, 40, Strategy::insert_new, 1);
  CHECK(std::set<int>(plan.nodes.begin(), plan.nodes.end()).size() == 40u);
  for (int j = 0; j < 40; ++j) CHECK(plan.multiplicity[j] == g.degree(j) + 1);
  CHECK_THROWS_AS(build_plan(g, 41, Strategy::insert_new, 1), Infeasible);
}

TEST_CASE("insertion matches the brute-force rule") {
  for (Seed s : {1, 2, 3}) {
    Graph g = community100(s);
    auto plan = build_plan(g, 60, Strategy::insert_new, 1);
    REQUIRE(plan.hops == 1);
    std::vector<int> sampled = plan.dominating;
    std::vector<int> mult = node_multiplicities(g, sampled);
    for (std::size_t t = plan.dominating.size(); t < plan.nodes.size(); ++t) {
      const int pick = oracle_pick(g, mult, sampled);
      CHECK(plan.nodes[t] == pick);
      sampled.push_back(pick);
      mult = node_multiplicities(g, sampled);
    }
    CHECK(mult == plan.multiplicity);
  }
}

TEST_CASE("repeat-dominating stays inside the dominating set") {
  Graph g = community100(4);
  auto plan = build_plan(g, 60, Strategy::repeat_dominating, 9);
  CHECK(plan.measurements() == 60);
  std::set<int> d(plan.dominating.begin(), plan.dominating.end());
  for (int i : plan.nodes) CHECK(d.count(i) == 1);
  CHECK(plan.multiplicity == node_multiplicities(g, plan.nodes));
  // every drawn operator has full row rank
  for (Seed s = 0; s < 10; ++s) CHECK(numerical_rank(draw_operator(plan, s).phi) == 60);
}

TEST_CASE("hop count grows when the dominating set is too large") {
  Graph g = make(GraphKind::path, 30);
  const int d1 = static_cast<int>(greedy_dominating_set(g).size());
  auto plan = build_plan(g, d1 - 1, Strategy::insert_new, 1);
  CHECK(plan.hops > 1);
  CHECK(plan.measurements() == d1 - 1);
  CHECK(is_dominating(*plan.aggregation, plan.nodes));
}

TEST_CASE("infeasible plans") {
  // two components need at least two measurements
  Graph two(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_THROWS_AS(build_plan(two, 1, Strategy::insert_new, 1), Infeasible);
  CHECK_NOTHROW(build_plan(two, 2, Strategy::insert_new, 1));
  // repeat pool around the path center has rank 3
  Graph p3 = make(GraphKind::path, 3);
  CHECK_NOTHROW(build_plan(p3, 3, Strategy::repeat_dominating, 1));
  CHECK_THROWS_AS(build_plan(p3, 4, Strategy::repeat_dominating, 1), Infeasible);
  CHECK_THROWS_AS(build_plan(p3, 0, Strategy::insert_new, 1), InvalidArgument);
  CHECK_THROWS_AS(build_plan(p3, 2, Strategy::exact, 1), InvalidArgument);
}

TEST_CASE("operator structure") {
  Graph g = community100(5);
  auto plan = build_plan(g, 50, Strategy::insert_new, 1);
  auto op = draw_operator(plan, 42);
  CHECK(op.rows() == 50);
  CHECK(op.cols() == 100);
  for (int t = 0; t < op.rows(); ++t) {
    auto nb = closed_in_neighborhood(*plan.aggregation, plan.nodes[t]);
    for (int j = 0; j < op.cols(); ++j)
      if (!nb.contains(j)) CHECK(op.phi(t, j) == 0.0);
      else CHECK(op.phi(t, j) != 0.0);
  }
  CHECK(draw_operator(plan, 42).phi == op.phi);
  CHECK(draw_operator(plan, 43).phi != op.phi);
  CHECK(op.method == "proposed-insert-new");
}

TEST_CASE("entry variance is 1/g on a complete graph") {
  Graph g = make(GraphKind::complete, 20);
  auto plan = build_plan(g, 10, Strategy::insert_new, 1);
  for (int j : plan.multiplicity) CHECK(j == 10);
  double sum2 = 0.0;
  long count = 0;
  for (Seed s = 0; s < 200; ++s) {
    auto op = draw_operator(plan, s);
    sum2 += op.phi.squaredNorm();
    count += op.phi.size();
  }
  CHECK(sum2 / count == doctest::Approx(0.1).epsilon(0.03));
}

TEST_CASE("norm is preserved in expectation") {
  Graph g = community100(6);
  auto plan = build_plan(g, 60, Strategy::insert_new, 1);
  Rng rng(7);
  Eigen::VectorXd x(100);
  for (int i = 0; i < 100; ++i) x(i) = rng.gaussian();
  double acc = 0.0;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) acc += measure(draw_operator(plan, s), x).squaredNorm();
  const double ratio = acc / draws / x.squaredNorm();
  CHECK(ratio >= 0.95);
  CHECK(ratio <= 1.05);
}

TEST_CASE("minimum multiplicity does not drop as m grows") {
  Graph g = community100(7);
  const int d1 = static_cast<int>(greedy_dominating_set(g).size());
  int prev = 0;
  for (int m = d1; m <= 100; ++m) {
    auto plan = build_plan(g, m, Strategy::insert_new, 1);
    CHECK(plan.hops == 1);
    CHECK(plan.min_multiplicity() >= prev);
    prev = plan.min_multiplicity();
  }
}

TEST_CASE("measure") {
  Graph g = make(GraphKind::cycle, 10);
  auto plan = build_plan(g, 5, Strategy::insert_new, 1);
  auto op = draw_operator(plan, 3);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(10, -1.0, 2.0);
  Eigen::VectorXd y = measure(op, x);
  for (int t = 0; t < 5; ++t) {
    double manual = 0.0;
    for (int j = 0; j < 10; ++j) manual += op.phi(t, j) * x(j);
    CHECK(y(t) == doctest::Approx(manual).epsilon(1e-14));
  }
  CHECK_THROWS_AS(measure(op, Eigen::VectorXd::Zero(9)), InvalidArgument);
}

TEST_CASE("transmission bounds") {
  Graph p6 = make(GraphKind::path, 6);
  auto plan = build_plan(p6, 2, Strategy::insert_new, 1);
  CHECK(plan.hops == 2);
  CHECK(plan.dominating == std::vector<int>{2, 5});
  auto b = transmission_bounds(p6, plan);
  CHECK(b.repeat_bound == 9);
  CHECK(b.insert_bound == 9);

  Graph star = make(GraphKind::star, 9);
  auto sp = build_plan(star, 1, Strategy::insert_new, 1);
  CHECK(transmission_bounds(star, sp).repeat_bound == 8);

  Graph g = community100(8);
  auto p1 = build_plan(g, 60, Strategy::insert_new, 1);
  long long sum_nb = 0;
  for (int j : std::set<int>(p1.nodes.begin(), p1.nodes.end())) sum_nb += g.degree(j);
  CHECK(transmission_bounds(g, p1).insert_bound == sum_nb);
  CHECK(transmission_bounds(g, p1).repeat_bound <= sum_nb);
}

TEST_CASE("rip multiplicity threshold") {
  const double t = rip_multiplicity_threshold(10, 100, 1.0, 0.5, 1.0);
  CHECK(t == doctest::Approx(4497.619771823107).epsilon(1e-12));
  CHECK(rip_multiplicity_threshold(10, 100, 0.5, 0.5, 1.0) == doctest::Approx(t / 4));
  CHECK(rip_multiplicity_threshold(10, 100, 1.0, 0.25, 1.0) == doctest::Approx(t * 4));
  CHECK(rip_multiplicity_threshold(10, 100, 1.0, 0.5, 3.0) == doctest::Approx(t * 3));
  CHECK(rip_multiplicity_threshold(1, 100, 1.0, 0.5, 1.0) > 0.0);
  CHECK_THROWS_AS(rip_multiplicity_threshold(0, 100, 1.0, 0.5, 1.0), InvalidArgument);
  CHECK_THROWS_AS(rip_multiplicity_threshold(10, 100, 1.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(rip_multiplicity_threshold(10, 100, 0.0, 0.5, 1.0), InvalidArgument);
}

TEST_CASE("plan json round trip") {
  Graph g = community100(9);
  auto plan = build_plan(g, 40, Strategy::repeat_dominating, 17);
  auto back = plan_from_json(plan_to_json(plan), g);
  CHECK(back.nodes == plan.nodes);
  CHECK(back.hops == plan.hops);
  CHECK(back.strategy == plan.strategy);
  CHECK(back.seed == plan.seed);
  CHECK(back.multiplicity == plan.multiplicity);
  CHECK(draw_operator(back, 5).phi == draw_operator(plan, 5).phi);

  auto j = plan_to_json(plan);
  j.erase("p");
  CHECK_THROWS_AS(plan_from_json(j, g), InvalidArgument);
  j = plan_to_json(plan);
  j["p"] = 0;
  CHECK_THROWS_AS(plan_from_json(j, g), InvalidArgument);
  j = plan_to_json(plan);
  j["nodes"] = std::vector<int>{0};
  CHECK_THROWS_AS(plan_from_json(j, g), InvalidArgument);
  j = plan_to_json(plan);
  j["nodes"] = std::vector<int>{0, 100};
  CHECK_THROWS_AS(plan_from_json(j, g), InvalidArgument);
  j = plan_to_json(plan);
  j["strategy"] = "bogus";
  CHECK_THROWS_AS(plan_from_json(j, g), InvalidArgument);
}
