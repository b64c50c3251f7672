#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "gsamp/errors.hpp"
#include "gsamp/graph.hpp"

namespace gsamp {

namespace {

struct KindName {
  GraphKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {GraphKind::erdos_renyi, "erdos-renyi"}, {GraphKind::random_geometric, "random-geometric"},
    {GraphKind::community, "community"},     {GraphKind::grid2d, "grid2d"},
    {GraphKind::small_world, "small-world"}, {GraphKind::cycle, "cycle"},
    {GraphKind::complete, "complete"},       {GraphKind::path, "path"},
    {GraphKind::star, "star"},
};

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(std::string("graph spec: ") + what);
}

Graph erdos_renyi(int n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges));
}

Graph random_geometric(int n, double radius, bool weighted, Rng& rng) {
  std::vector<Point> pos(static_cast<std::size_t>(n));
  for (auto& p : pos) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y);
      if (d < radius) edges.push_back({i, j, weighted ? std::exp(-d) : 1.0});
    }
  return Graph(n, std::move(edges), std::move(pos));
}

// Union-find over node indices, used to stitch communities together.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

Graph community(int n, int count, double p_intra, double p_inter, Rng& rng) {
  std::vector<int> owner(static_cast<std::size_t>(n));
  std::vector<int> first(static_cast<std::size_t>(count));
  for (int c = 0, node = 0; c < count; ++c) {
    const int size = n / count + (c < n % count ? 1 : 0);
    first[c] = node;
    for (int t = 0; t < size; ++t) owner[node++] = c;
  }
  std::vector<Edge> edges;
  Components intra(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool same = owner[i] == owner[j];
      if (rng.bernoulli(same ? p_intra : p_inter)) {
        edges.push_back({i, j, 1.0});
        if (same) intra.unite(i, j);
      }
    }
  std::set<std::pair<int, int>> present;
  for (const auto& e : edges) present.emplace(e.u, e.v);
  auto link = [&](int a, int b) {
    if (present.emplace(std::min(a, b), std::max(a, b)).second) edges.push_back({a, b, 1.0});
  };
  // Chain the pieces of each community in index order, then chain the communities.
  for (int c = 0; c < count; ++c) {
    const int end = c + 1 < count ? first[c + 1] : n;
    int previous = first[c];
    for (int i = first[c] + 1; i < end; ++i)
      if (intra.find(i) == i) {
        link(previous, i);
        intra.unite(previous, i);
        previous = i;
      }
    if (c + 1 < count) link(first[c], first[c + 1]);
  }
  return Graph(n, std::move(edges));
}

Graph grid2d(int rows, int cols) {
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int i = r * cols + c;
      if (c + 1 < cols) edges.push_back({i, i + 1, 1.0});
      if (r + 1 < rows) edges.push_back({i, i + cols, 1.0});
    }
  return Graph(rows * cols, std::move(edges));
}

// Watts-Strogatz: ring lattice, then each lattice edge (i, i+s) is rewired
// with probability `beta` to a uniformly chosen endpoint that creates neither
// a self-loop nor a duplicate.
Graph small_world(int n, int k, double beta, Rng& rng) {
  std::set<std::pair<int, int>> present;
  auto key = [](int a, int b) { return std::pair(std::min(a, b), std::max(a, b)); };
  for (int s = 1; s <= k / 2; ++s)
    for (int i = 0; i < n; ++i) present.insert(key(i, (i + s) % n));
  for (int s = 1; s <= k / 2; ++s)
    for (int i = 0; i < n; ++i) {
      if (!rng.bernoulli(beta)) continue;
      const int j = (i + s) % n;
      if (!present.count(key(i, j))) continue;
      int free = 0;
      for (int t = 0; t < n; ++t)
        if (t != i && !present.count(key(i, t))) ++free;
      if (free == 0) continue;
      int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(free)));
      int target = -1;
      for (int t = 0; t < n; ++t)
        if (t != i && !present.count(key(i, t)) && pick-- == 0) {
          target = t;
          break;
        }
      present.erase(key(i, j));
      present.insert(key(i, target));
    }
  std::vector<Edge> edges;
  for (const auto& [a, b] : present) edges.push_back({a, b, 1.0});
  return Graph(n, std::move(edges));
}

}  // namespace

GraphKind parse_graph_kind(std::string_view name) {
  for (const auto& kn : kKindNames)
    if (kn.name == name) return kn.kind;
  throw InvalidArgument("unknown graph kind '" + std::string(name) + "'");
}

std::string to_string(GraphKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return std::string(kn.name);
  return "unknown";
}

void GraphSpec::validate() const {
  switch (kind) {
    case GraphKind::grid2d:
      require(rows >= 1 && cols >= 1, "grid dimensions must be positive");
      return;
    case GraphKind::erdos_renyi:
      require(edge_prob > 0.0 && edge_prob <= 1.0, "edge probability must lie in (0, 1]");
      break;
    case GraphKind::random_geometric:
      require(radius > 0.0 && radius <= std::sqrt(2.0), "radius must lie in (0, sqrt(2)]");
      break;
    case GraphKind::community:
      require(communities >= 1 && communities <= n, "community count must lie in [1, n]");
      require(p_intra > 0.0 && p_intra <= 1.0, "p_intra must lie in (0, 1]");
      require(p_inter >= 0.0 && p_inter <= 1.0, "p_inter must lie in [0, 1]");
      break;
    case GraphKind::small_world:
      require(ring_degree >= 2 && ring_degree % 2 == 0, "ring degree must be even and >= 2");
      require(ring_degree < n, "ring degree must be below n");
      require(rewire >= 0.0 && rewire <= 1.0, "rewire probability must lie in [0, 1]");
      break;
    case GraphKind::cycle:
      require(n >= 3, "cycle needs n >= 3");
      break;
    default:
      break;
  }
  require(n >= 1, "n must be positive");
}

Graph generate(const GraphSpec& spec) {
  spec.validate();
  Rng rng(derive_seed(spec.seed, to_string(spec.kind)));
  const int n = spec.n;
  switch (spec.kind) {
    case GraphKind::erdos_renyi:
      return erdos_renyi(n, spec.edge_prob, rng);
    case GraphKind::random_geometric:
      return random_geometric(n, spec.radius, spec.weighted, rng);
    case GraphKind::community:
      return community(n, spec.communities, spec.p_intra, spec.p_inter, rng);
    case GraphKind::grid2d:
      return grid2d(spec.rows, spec.cols);
    case GraphKind::small_world:
      return small_world(n, spec.ring_degree, spec.rewire, rng);
    case GraphKind::cycle: {
      std::vector<Edge> edges;
      for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
      return Graph(n, std::move(edges));
    }
    case GraphKind::complete: {
      std::vector<Edge> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
      return Graph(n, std::move(edges));
    }
    case GraphKind::path: {
      std::vector<Edge> edges;
      for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
      return Graph(n, std::move(edges));
    }
    case GraphKind::star: {
      std::vector<Edge> edges;
      for (int i = 1; i < n; ++i) edges.push_back({0, i, 1.0});
      return Graph(n, std::move(edges));
    }
  }
  throw InvalidArgument("graph spec: unhandled kind");
}

}  // namespace gsamp
