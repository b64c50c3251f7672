#include "gsamp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsamp/errors.hpp"
#include "gsamp/linalg.hpp"

namespace gsamp {

namespace {

void check_support(std::span<const int> support, int n) {
  if (support.empty()) throw InvalidArgument("baseline: empty support");
  NodeSet{{support.begin(), support.end()}, false}.validate(n);
}

Eigen::MatrixXd restricted_rows(const OrthoBasis& basis, std::span<const int> support) {
  Eigen::MatrixXd rows(basis.size(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) rows.col(static_cast<Eigen::Index>(c)) = basis.u.col(support[c]);
  return rows;
}

SamplingOperator selection_operator(const std::vector<int>& nodes, int n, std::string method) {
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nodes.size()), n);
  for (std::size_t t = 0; t < nodes.size(); ++t) phi(static_cast<Eigen::Index>(t), nodes[t]) = 1.0;
  return {std::move(phi), std::nullopt, 0, std::move(method)};
}

double smallest_singular_value(const Eigen::MatrixXd& a) {
  const auto s = singular_values(a);
  return s(s.size() - 1);
}

}  // namespace

SamplingOperator uniform_node_sampling(int n, int m, Seed seed) {
  if (m < 1 || m > n) throw InvalidArgument("uniform_node_sampling: m must lie in [1, n]");
  Rng rng(seed);
  auto op = selection_operator(sample_without_replacement(rng, n, m), n, "uniform");
  op.seed = seed;
  return op;
}

SamplingOperator weighted_node_sampling(const OrthoBasis& basis, std::span<const int> support, int m, Seed seed) {
  const int n = basis.size();
  check_support(support, n);
  if (m < 1) throw InvalidArgument("weighted_node_sampling: m must be positive");
  const Eigen::VectorXd energy = restricted_rows(basis, support).rowwise().squaredNorm();
  const double total = energy.sum();
  if (!(total > 0.0)) throw InvalidArgument("weighted_node_sampling: support rows carry no energy");
  Eigen::VectorXd cdf(n);
  double running = 0.0;
  for (int i = 0; i < n; ++i) cdf(i) = (running += energy(i) / total);

  Rng rng(seed);
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(m, n);
  for (int t = 0; t < m; ++t) {
    const double u = rng.uniform() * running;
    int i = static_cast<int>(std::upper_bound(cdf.data(), cdf.data() + n, u) - cdf.data());
    i = std::min(i, n - 1);
    phi(t, i) = 1.0 / std::sqrt(m * energy(i) / total);
  }
  return {std::move(phi), std::nullopt, seed, "weighted"};
}

SamplingOperator minpinv_greedy(const OrthoBasis& basis, std::span<const int> support, int m) {
  const int n = basis.size();
  check_support(support, n);
  if (m < 1 || m > n) throw InvalidArgument("minpinv_greedy: m must lie in [1, n]");
  const Eigen::MatrixXd rows = restricted_rows(basis, support);
  const auto k = rows.cols();

  std::vector<int> chosen;
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  Eigen::MatrixXd stacked(0, k);
  auto stack_with = [&](int i) {
    Eigen::MatrixXd s(stacked.rows() + 1, k);
    s.topRows(stacked.rows()) = stacked;
    s.row(stacked.rows()) = rows.row(i);
    return s;
  };
  auto take = [&](int i) {
    stacked = stack_with(i);
    chosen.push_back(i);
    taken[i] = 1;
  };

  // Phase 1: grow the smallest singular value until full column rank.
  while (static_cast<int>(chosen.size()) < m && (stacked.rows() == 0 || numerical_rank(stacked) < k)) {
    int best = -1;
    double best_value = -1.0;
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double value = smallest_singular_value(stack_with(i));
      if (value > best_value) {
        best_value = value;
        best = i;
      }
    }
    take(best);
  }

  // Phase 2: minimize trace((S^T S)^-1) = ||S^+||_F^2. Adding row r changes
  // the trace by -r^T M^-2 r / (1 + r^T M^-1 r) with M = S^T S.
  if (static_cast<int>(chosen.size()) < m) {
    Eigen::MatrixXd m_inv = (stacked.transpose() * stacked).inverse();
    while (static_cast<int>(chosen.size()) < m) {
      int best = -1;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        if (taken[i]) continue;
        const Eigen::VectorXd r = rows.row(i).transpose();
        const Eigen::VectorXd mr = m_inv * r;
        const double gain = mr.squaredNorm() / (1.0 + r.dot(mr));
        if (gain > best_gain) {
          best_gain = gain;
          best = i;
        }
      }
      const Eigen::VectorXd r = rows.row(best).transpose();
      const Eigen::VectorXd mr = m_inv * r;
      m_inv -= mr * mr.transpose() / (1.0 + r.dot(mr));
      take(best);
    }
  }
  return selection_operator(chosen, n, "minpinv");
}

int default_observation_node(const Graph& g) {
  if (g.size() < 1) throw InvalidArgument("default_observation_node: empty graph");
  int best = 0;
  for (int i = 1; i < g.size(); ++i)
    if (g.degree(i) > g.degree(best)) best = i;
  return best;
}

SamplingOperator successive_aggregations(const Graph& g, int node, int m) {
  g.neighbors(node);  // range check
  if (m < 1) throw InvalidArgument("successive_aggregations: m must be positive");
  const int n = g.size();
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(m, n);
  phi(0, node) = 1.0;
  for (int l = 1; l < m; ++l)
    for (int i = 0; i < n; ++i) {
      double v = 0.0;
      for (const auto& nb : g.neighbors(i)) v += phi(l - 1, nb.node);
      phi(l, i) = v;
    }
  return {std::move(phi), std::nullopt, 0, "successive"};
}

}  // namespace gsamp
