#include "gsamp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gsamp/errors.hpp"
#include "gsamp/linalg.hpp"

namespace gsamp {

namespace {

// Insertion score of every eligible node against the current multiplicities.
// Returns the (score, node) ordering, best first.
std::vector<std::pair<int, int>> rank_candidates(const Graph& agg, const std::vector<int>& mult,
                                                 std::span<const int> eligible) {
  int g_min = std::numeric_limits<int>::max();
  for (int i : eligible) {
    g_min = std::min(g_min, mult[i]);
    for (const auto& nb : agg.neighbors(i)) g_min = std::min(g_min, mult[nb.node]);
  }
  std::vector<std::pair<int, int>> ranked;
  ranked.reserve(eligible.size());
  for (int i : eligible) {
    int score = mult[i] == g_min ? 1 : 0;
    for (const auto& nb : agg.neighbors(i))
      if (mult[nb.node] == g_min) ++score;
    ranked.emplace_back(score, i);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  return ranked;
}

void add_neighborhood(const Graph& agg, int i, std::vector<int>& mult) {
  ++mult[i];
  for (const auto& nb : agg.neighbors(i)) ++mult[nb.node];
}

// Incremental row-space basis for the repeat-dominating rank check.
class RowSpace {
 public:
  RowSpace(int capacity, int n) : basis_(capacity, n), tol_(rank_tolerance(capacity, n, 1.0)) {}

  bool try_add(Eigen::VectorXd row) {
    const double norm = row.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (int t = 0; t < size_; ++t) row -= basis_.row(t).dot(row) * basis_.row(t).transpose();
    const double residual = row.norm();
    if (!(residual > tol_ * norm)) return false;
    basis_.row(size_++) = row.transpose() / residual;
    return true;
  }
  int size() const noexcept { return size_; }

 private:
  Eigen::MatrixXd basis_;
  int size_ = 0;
  double tol_;
};

Eigen::VectorXd random_support_row(const Graph& agg, int i, Rng& rng) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(agg.size());
  for (int j : closed_in_neighborhood(agg, i)) row(j) = rng.gaussian();
  return row;
}

}  // namespace

Strategy parse_strategy(std::string_view name) {
  if (name == "exact") return Strategy::exact;
  if (name == "repeat-dominating" || name == "repeat") return Strategy::repeat_dominating;
  if (name == "insert-new" || name == "insert") return Strategy::insert_new;
  throw InvalidArgument("unknown sampling strategy '" + std::string(name) + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::exact: return "exact";
    case Strategy::repeat_dominating: return "repeat-dominating";
    case Strategy::insert_new: return "insert-new";
  }
  return "unknown";
}

int SamplingPlan::min_multiplicity() const {
  return multiplicity.empty() ? 0 : *std::min_element(multiplicity.begin(), multiplicity.end());
}

std::vector<int> node_multiplicities(const Graph& g, std::span<const int> r) {
  if (r.empty()) throw InvalidArgument("node_multiplicities: empty sampling set");
  std::vector<int> mult(static_cast<std::size_t>(g.size()), 0);
  for (int i : r) add_neighborhood(g, i, mult);
  return mult;
}

SamplingPlan build_plan(const Graph& g, int m, Strategy strategy, Seed seed) {
  if (m < 1) throw InvalidArgument("build_plan: m must be positive");
  if (strategy == Strategy::exact)
    throw InvalidArgument("build_plan: strategy must be repeat-dominating or insert-new");

  HopPlan hop = minimal_hop_plan(g, m);
  auto agg = std::make_shared<const Graph>(std::move(hop.graph));
  SamplingPlan plan;
  plan.hops = hop.hops;
  plan.dominating = hop.dominating.nodes;
  plan.aggregation = agg;
  plan.seed = seed;
  plan.nodes = plan.dominating;
  plan.multiplicity = node_multiplicities(*agg, plan.nodes);
  plan.strategy = static_cast<int>(plan.nodes.size()) == m ? Strategy::exact : strategy;

  const int n = g.size();
  if (strategy == Strategy::insert_new) {
    std::vector<char> sampled(static_cast<std::size_t>(n), 0);
    for (int i : plan.nodes) sampled[i] = 1;
    std::vector<int> eligible;
    while (plan.measurements() < m) {
      eligible.clear();
      for (int i = 0; i < n; ++i)
        if (!sampled[i]) eligible.push_back(i);
      if (eligible.empty())
        throw Infeasible("build_plan: insert-new needs m <= n (m=" + std::to_string(m) +
                         ", n=" + std::to_string(n) + ")");
      const int pick = rank_candidates(*agg, plan.multiplicity, eligible).front().second;
      sampled[pick] = 1;
      plan.nodes.push_back(pick);
      add_neighborhood(*agg, pick, plan.multiplicity);
    }
  } else if (plan.measurements() < m) {
    Rng rng(derive_seed(seed, "repeat-rank-check"));
    RowSpace rows(m, n);
    for (int i : plan.nodes)
      if (!rows.try_add(random_support_row(*agg, i, rng)))
        throw Infeasible("build_plan: dominating rows are linearly dependent");
    std::vector<int> pool = plan.dominating;
    std::sort(pool.begin(), pool.end());
    while (plan.measurements() < m) {
      bool accepted = false;
      for (const auto& [score, node] : rank_candidates(*agg, plan.multiplicity, pool)) {
        if (!rows.try_add(random_support_row(*agg, node, rng))) continue;
        plan.nodes.push_back(node);
        add_neighborhood(*agg, node, plan.multiplicity);
        accepted = true;
        break;
      }
      if (!accepted)
        throw Infeasible("build_plan: repeat-dominating pool exhausted at rank " +
                         std::to_string(rows.size()) + " < m=" + std::to_string(m));
    }
  }
  if (plan.min_multiplicity() < 1) throw std::logic_error("build_plan: sampling set is not dominating");
  return plan;
}

SamplingOperator draw_operator(const SamplingPlan& plan, Seed seed) {
  if (!plan.aggregation) throw InvalidArgument("draw_operator: plan has no aggregation graph");
  const Graph& agg = *plan.aggregation;
  Rng rng(seed);
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(plan.measurements(), agg.size());
  for (int t = 0; t < plan.measurements(); ++t)
    for (int j : closed_in_neighborhood(agg, plan.nodes[t]))
      phi(t, j) = rng.gaussian() / std::sqrt(static_cast<double>(plan.multiplicity[j]));
  return {std::move(phi), plan, seed, "proposed-" + to_string(plan.strategy)};
}

Eigen::VectorXd measure(const SamplingOperator& op, const Eigen::VectorXd& x) {
  if (x.size() != op.phi.cols())
    throw InvalidArgument("measure: signal length " + std::to_string(x.size()) + " differs from operator width " +
                          std::to_string(op.phi.cols()));
  return op.phi * x;
}

TransmissionBounds transmission_bounds(const Graph& base, const SamplingPlan& plan) {
  auto shell_cost = [&](int j) {
    long long cost = 0;
    for (int d : bfs_hops(base, j, plan.hops))
      if (d > 0) cost += d;
    return cost;
  };
  TransmissionBounds out;
  for (int j : std::set<int>(plan.dominating.begin(), plan.dominating.end())) out.repeat_bound += shell_cost(j);
  for (int j : std::set<int>(plan.nodes.begin(), plan.nodes.end())) out.insert_bound += shell_cost(j);
  return out;
}

double rip_multiplicity_threshold(int k, int n, double mu, double delta, double c) {
  if (k < 1) throw InvalidArgument("rip threshold: k must be >= 1");
  if (n < 1) throw InvalidArgument("rip threshold: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("rip threshold: delta must lie in (0, 1)");
  if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("rip threshold: mu must lie in (0, 1]");
  if (!(c > 0.0)) throw InvalidArgument("rip threshold: c must be positive");
  const double log_k = std::max(std::log(static_cast<double>(k)), 1.0);
  const double log_n = std::log(static_cast<double>(n));
  return c * mu * mu * k * log_k * log_k * log_n * log_n / (delta * delta);
}

nlohmann::json plan_to_json(const SamplingPlan& plan) {
  return {{"nodes", plan.nodes}, {"p", plan.hops}, {"strategy", to_string(plan.strategy)}, {"seed", plan.seed}};
}

SamplingPlan plan_from_json(const nlohmann::json& j, const Graph& base) {
  SamplingPlan plan;
  try {
    plan.nodes = j.at("nodes").get<std::vector<int>>();
    plan.hops = j.at("p").get<int>();
    plan.strategy = parse_strategy(j.at("strategy").get<std::string>());
    plan.seed = j.at("seed").get<Seed>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("plan json: ") + e.what());
  }
  if (plan.hops < 1) throw InvalidArgument("plan json: p must be positive");
  if (plan.nodes.empty()) throw InvalidArgument("plan json: empty node list");
  NodeSet{plan.nodes, true}.validate(base.size());
  auto agg = std::make_shared<const Graph>(p_hop_graph(base, plan.hops));
  plan.multiplicity = node_multiplicities(*agg, plan.nodes);
  if (plan.min_multiplicity() < 1) throw InvalidArgument("plan json: sampling nodes do not dominate the graph");
  plan.dominating = greedy_dominating_set(*agg).nodes;
  plan.aggregation = std::move(agg);
  return plan;
}

}  // namespace gsamp
