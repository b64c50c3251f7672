#include "gsamp/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <utility>

#include "gsamp/errors.hpp"

namespace gsamp {

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges, std::vector<Point> positions)
    : n_(n), positions_(std::move(positions)) {
  if (n < 0) throw InvalidArgument("graph: negative node count");
  if (!positions_.empty() && positions_.size() != static_cast<std::size_t>(n))
    throw InvalidArgument("graph: positions size differs from node count");
  for (const auto& p : positions_)
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
      throw InvalidArgument("graph: position outside the unit square");

  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw InvalidArgument("graph: edge endpoint out of range");
    if (e.u == e.v) throw InvalidArgument("graph: self-loop edge");
    if (!(e.w > 0.0)) throw InvalidArgument("graph: edge weight must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.w != 1.0) weighted_ = true;
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw InvalidArgument("graph: duplicate edge (" + std::to_string(edges[i].u) + ", " +
                            std::to_string(edges[i].v) + ")");
  edges_ = std::move(edges);

  std::vector<std::size_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges_) {
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  offsets_ = counts;
  adjacency_.resize(2 * edges_.size());
  auto cursor = offsets_;
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.w};
    adjacency_[cursor[e.v]++] = {e.u, e.w};
  }
  for (int i = 0; i < n; ++i)
    std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

void Graph::check_node(int i) const {
  if (i < 0 || i >= n_)
    throw InvalidArgument("node index " + std::to_string(i) + " out of range [0, " +
                          std::to_string(n_) + ")");
}

std::span<const Neighbor> Graph::neighbors(int i) const {
  check_node(i);
  return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

int Graph::degree(int i) const { return static_cast<int>(neighbors(i).size()); }

double Graph::weighted_degree(int i) const {
  double d = 0.0;
  for (const auto& nb : neighbors(i)) d += nb.weight;
  return d;
}

int Graph::max_degree() const {
  int best = 0;
  for (int i = 0; i < n_; ++i) best = std::max(best, degree(i));
  return best;
}

bool Graph::has_edge(int i, int j) const {
  const auto nbs = neighbors(i);
  check_node(j);
  return std::binary_search(nbs.begin(), nbs.end(), Neighbor{j, 0.0},
                            [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.w != y.w) return false;
  }
  return true;
}

bool NodeSet::contains(int i) const { return std::find(nodes.begin(), nodes.end(), i) != nodes.end(); }

void NodeSet::validate(int n) const {
  std::vector<char> seen(static_cast<std::size_t>(std::max(n, 0)), 0);
  for (int i : nodes) {
    if (i < 0 || i >= n) throw InvalidArgument("node set: index " + std::to_string(i) + " out of range");
    if (seen[i] && !multiset) throw InvalidArgument("node set: repeated index in a plain set");
    seen[i] = 1;
  }
}

NodeSet closed_in_neighborhood(const Graph& g, int i) {
  const auto nbs = g.neighbors(i);
  NodeSet out;
  out.nodes.reserve(nbs.size() + 1);
  bool placed = false;
  for (const auto& nb : nbs) {
    if (!placed && nb.node > i) {
      out.nodes.push_back(i);
      placed = true;
    }
    out.nodes.push_back(nb.node);
  }
  if (!placed) out.nodes.push_back(i);
  return out;
}

bool is_dominating(const Graph& g, std::span<const int> d) {
  std::vector<char> covered(static_cast<std::size_t>(g.size()), 0);
  for (int j : d) {
    covered[j] = 1;
    for (const auto& nb : g.neighbors(j)) covered[nb.node] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

NodeSet greedy_dominating_set(const Graph& g) {
  // A node has a closed neighbor in D exactly when it is dominated, so the
  // candidate pool is the undominated set and the loop ends with D dominating.
  const int n = g.size();
  std::vector<char> dominated(static_cast<std::size_t>(n), 0);
  int remaining = n;
  NodeSet d;
  while (remaining > 0) {
    int best = -1;
    for (int i = 0; i < n; ++i)
      if (!dominated[i] && (best < 0 || g.degree(i) > g.degree(best))) best = i;
    d.nodes.push_back(best);
    if (!dominated[best]) {
      dominated[best] = 1;
      --remaining;
    }
    for (const auto& nb : g.neighbors(best))
      if (!dominated[nb.node]) {
        dominated[nb.node] = 1;
        --remaining;
      }
  }
  return d;
}

std::vector<int> bfs_hops(const Graph& g, int source, int max_depth) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  g.neighbors(source);  // range check
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (max_depth >= 0 && dist[u] >= max_depth) continue;
    for (const auto& nb : g.neighbors(u))
      if (dist[nb.node] < 0) {
        dist[nb.node] = dist[u] + 1;
        queue.push_back(nb.node);
      }
  }
  return dist;
}

std::vector<int> component_labels(const Graph& g) {
  std::vector<int> label(static_cast<std::size_t>(g.size()), -1);
  for (int s = 0; s < g.size(); ++s) {
    if (label[s] >= 0) continue;
    const auto dist = bfs_hops(g, s);
    for (int i = 0; i < g.size(); ++i)
      if (dist[i] >= 0) label[i] = s;
  }
  return label;
}

int component_count(const Graph& g) {
  const auto label = component_labels(g);
  return static_cast<int>(std::set<int>(label.begin(), label.end()).size());
}

int max_component_diameter(const Graph& g, Exec exec) {
  std::vector<int> ecc(static_cast<std::size_t>(g.size()), 0);
  for_each_index(g.size(), exec, [&](std::int64_t s) {
    const auto dist = bfs_hops(g, static_cast<int>(s));
    ecc[s] = *std::max_element(dist.begin(), dist.end());
  });
  return ecc.empty() ? 0 : *std::max_element(ecc.begin(), ecc.end());
}

Graph p_hop_graph(const Graph& g, int p, Exec exec) {
  if (p < 1) throw InvalidArgument("p_hop_graph: p must be positive");
  const int n = g.size();
  if (p == 1) {
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, 1.0});
    return Graph(n, std::move(edges), {g.positions().begin(), g.positions().end()});
  }
  std::vector<std::vector<int>> reach(static_cast<std::size_t>(n));
  for_each_index(n, exec, [&](std::int64_t s) {
    const auto dist = bfs_hops(g, static_cast<int>(s), p);
    for (int j = static_cast<int>(s) + 1; j < n; ++j)
      if (dist[j] > 0) reach[s].push_back(j);
  });
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j : reach[i]) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges), {g.positions().begin(), g.positions().end()});
}

HopPlan minimal_hop_plan(const Graph& g, int m) {
  if (m < 1) throw InvalidArgument("minimal_hop_plan: m must be positive");
  if (g.size() < 1) throw InvalidArgument("minimal_hop_plan: empty graph");
  HopPlan plan{1, greedy_dominating_set(g), p_hop_graph(g, 1)};
  if (static_cast<int>(plan.dominating.size()) <= m) return plan;
  const int cap = std::max(1, max_component_diameter(g));
  for (int p = 2; p <= cap; ++p) {
    Graph hop = p_hop_graph(g, p);
    NodeSet d = greedy_dominating_set(hop);
    if (static_cast<int>(d.size()) <= m) return {p, std::move(d), std::move(hop)};
    plan = {p, std::move(d), std::move(hop)};
  }
  throw Infeasible("minimal_hop_plan: " + std::to_string(plan.dominating.size()) +
                   " dominators remain at the diameter cap p=" + std::to_string(cap) +
                   ", above the budget m=" + std::to_string(m));
}

}  // namespace gsamp
