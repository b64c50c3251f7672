#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "gsamp/graph.hpp"
#include "gsamp/rng.hpp"

namespace gsamp {

enum class Strategy { exact, repeat_dominating, insert_new };

Strategy parse_strategy(std::string_view name);
std::string to_string(Strategy s);

/// Sampling multiset R in measurement order (row t of the operator aggregates
/// around nodes[t]) together with the hop count and node multiplicities on
/// the aggregation graph.
struct SamplingPlan {
  std::vector<int> nodes;
  int hops = 1;
  Strategy strategy = Strategy::exact;
  std::vector<int> multiplicity;
  std::vector<int> dominating;  ///< the p-hop dominating set R was grown from
  std::shared_ptr<const Graph> aggregation;
  Seed seed = 0;

  int measurements() const noexcept { return static_cast<int>(nodes.size()); }
  int min_multiplicity() const;
};

/// g_j = number of entries of r (with repetition) whose closed neighborhood contains j.
std::vector<int> node_multiplicities(const Graph& g, std::span<const int> r);

/// Builds a plan with exactly m measurements.
///
/// The 1-hop greedy dominating set is used as is when it has m nodes; when it
/// is larger, the smallest hop count whose dominating set fits is chosen.
/// Remaining measurements are added one at a time: among the eligible nodes
/// (the dominating set for repeat_dominating, every unsampled node for
/// insert_new) pick the one with the most closed neighbors at the current
/// minimum multiplicity, lowest index on ties. A repeated node is kept only if
/// a freshly drawn row is linearly independent of the rows so far; otherwise
/// it is dropped from that step's pool.
///
/// Throws Infeasible when no hop count fits m, when insert_new runs out of
/// nodes (m > n), or when the repeat pool is exhausted.
SamplingPlan build_plan(const Graph& g, int m, Strategy strategy, Seed seed);

/// Randomized local aggregation operator.
struct SamplingOperator {
  Eigen::MatrixXd phi;
  std::optional<SamplingPlan> plan;
  Seed seed = 0;
  std::string method;

  int rows() const noexcept { return static_cast<int>(phi.rows()); }
  int cols() const noexcept { return static_cast<int>(phi.cols()); }
};

/// Row t holds independent N(0, 1/g_j) entries at j in N̄_{nodes[t]}, zeros
/// elsewhere. Variates are consumed row by row, neighbors in ascending order.
SamplingOperator draw_operator(const SamplingPlan& plan, Seed seed);

/// y = Φx.
Eigen::VectorXd measure(const SamplingOperator& op, const Eigen::VectorXd& x);

struct TransmissionBounds {
  long long repeat_bound = 0;  ///< over the dominating set
  long long insert_bound = 0;  ///< over the distinct sampling nodes
};

/// Upper bounds sum_j sum_{i=1..p} i * |N_j^i| using hop shells of the original graph.
TransmissionBounds transmission_bounds(const Graph& base, const SamplingPlan& plan);

/// Right-hand side c * delta^-2 * mu^2 * k * log^2(k) * log^2(n) of the
/// multiplicity condition for the restricted isometry property. log(k) is
/// floored at 1 so k = 1 stays defined.
double rip_multiplicity_threshold(int k, int n, double mu, double delta, double c);

/// {"nodes": [...], "p": int, "strategy": str, "seed": int}
nlohmann::json plan_to_json(const SamplingPlan& plan);
/// Rebuilds the aggregation graph from `base` and checks the domination invariant.
SamplingPlan plan_from_json(const nlohmann::json& j, const Graph& base);

}  // namespace gsamp
