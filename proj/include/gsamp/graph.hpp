#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gsamp/parallel.hpp"
#include "gsamp/rng.hpp"

namespace gsamp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Undirected edge, canonically stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

struct Neighbor {
  int node = 0;
  double weight = 1.0;
};

/// Immutable undirected graph with optional node positions in the unit square.
///
/// Edges are validated on construction: no self-loops, no duplicates (in
/// either orientation), strictly positive weights. Self-loops are a
/// convention of the neighborhood queries, never stored. Adjacency is kept
/// in CSR form with neighbor lists sorted by node index.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::vector<Edge> edges, std::vector<Point> positions = {});

  int size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(int i) const;
  int degree(int i) const;
  double weighted_degree(int i) const;
  int max_degree() const;
  bool has_edge(int i, int j) const;

  bool directed() const noexcept { return false; }
  bool weighted() const noexcept { return weighted_; }
  bool has_positions() const noexcept { return !positions_.empty(); }
  std::span<const Point> positions() const noexcept { return positions_; }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void check_node(int i) const;

  int n_ = 0;
  bool weighted_ = false;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<Point> positions_;
};

/// Ordered node list. Repetitions are legal only when `multiset` is set.
struct NodeSet {
  std::vector<int> nodes;
  bool multiset = false;

  std::size_t size() const noexcept { return nodes.size(); }
  bool empty() const noexcept { return nodes.empty(); }
  bool contains(int i) const;
  auto begin() const noexcept { return nodes.begin(); }
  auto end() const noexcept { return nodes.end(); }
  /// Throws InvalidArgument on an out-of-range index, or a repetition in a plain set.
  void validate(int n) const;
};

/// N̄_i = {j : (j, i) ∈ E} ∪ {i}, sorted ascending.
NodeSet closed_in_neighborhood(const Graph& g, int i);

/// True when every node has a closed neighbor in `d`.
bool is_dominating(const Graph& g, std::span<const int> d);

/// Greedy dominating set: repeatedly add the maximum-degree node none of whose
/// closed neighbors is in the set yet (lowest index on ties). Returned in
/// selection order.
NodeSet greedy_dominating_set(const Graph& g);

/// Hop distances from `source` (-1 when unreachable). A non-negative
/// `max_depth` stops the search at that depth.
std::vector<int> bfs_hops(const Graph& g, int source, int max_depth = -1);

/// Connected-component label per node, labels numbered by lowest member.
std::vector<int> component_labels(const Graph& g);
int component_count(const Graph& g);

/// Largest eccentricity over all nodes, per component (0 for an edgeless graph).
int max_component_diameter(const Graph& g, Exec exec = Exec::parallel);

/// Graph connecting every pair at hop distance 1..p. Binary weights; positions copied.
Graph p_hop_graph(const Graph& g, int p, Exec exec = Exec::parallel);

struct HopPlan {
  int hops = 1;
  NodeSet dominating;
  Graph graph;  ///< the p-hop aggregation graph the set dominates
};

/// Smallest p whose p-hop greedy dominating set has at most m nodes.
/// Throws Infeasible when even the diameter cap leaves more than m dominators.
HopPlan minimal_hop_plan(const Graph& g, int m);

enum class GraphKind { erdos_renyi, random_geometric, community, grid2d, small_world, cycle, complete, path, star };

GraphKind parse_graph_kind(std::string_view name);
std::string to_string(GraphKind kind);

/// Generator parameters; only the fields relevant to `kind` are read.
struct GraphSpec {
  GraphKind kind = GraphKind::erdos_renyi;
  int n = 100;
  double edge_prob = 0.1;    ///< erdos-renyi
  double radius = 0.2;       ///< random-geometric
  bool weighted = false;     ///< random-geometric: w_ij = exp(-d_ij)
  int communities = 5;       ///< community
  double p_intra = 0.3;      ///< community
  double p_inter = 0.01;     ///< community
  int rows = 10;             ///< grid2d
  int cols = 10;             ///< grid2d
  int ring_degree = 4;       ///< small-world, even
  double rewire = 0.1;       ///< small-world
  Seed seed = 1;

  void validate() const;
};

/// Deterministic in (spec, spec.seed).
Graph generate(const GraphSpec& spec);

Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::string& path, const Graph& g);

/// n lines "x y"; returns a copy of `g` carrying the positions.
Graph read_positions(std::istream& in, const Graph& g);
Graph load_positions(const std::string& path, const Graph& g);
void write_positions(std::ostream& out, const Graph& g);

}  // namespace gsamp
