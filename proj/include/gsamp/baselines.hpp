#pragma once

#include <span>

#include "gsamp/graph.hpp"
#include "gsamp/sampler.hpp"
#include "gsamp/spectral.hpp"

namespace gsamp {

/// m distinct nodes drawn uniformly; rows of the identity in draw order.
SamplingOperator uniform_node_sampling(int n, int m, Seed seed);

/// m i.i.d. draws with p_i proportional to the squared norm of row i of U
/// restricted to `support`. The row for node i is e_i / sqrt(m * p_i).
SamplingOperator weighted_node_sampling(const OrthoBasis& basis, std::span<const int> support, int m, Seed seed);

/// Deterministic greedy selection on the rows of U restricted to `support`.
/// While the selected rows are column-rank deficient, add the node maximizing
/// the smallest singular value of the stacked rows; afterwards add the node
/// minimizing the squared Frobenius norm of their pseudoinverse.
SamplingOperator minpinv_greedy(const OrthoBasis& basis, std::span<const int> support, int m);

/// Row l (l = 0..m-1) is row `node` of A^l for the binary adjacency A.
SamplingOperator successive_aggregations(const Graph& g, int node, int m);

/// Maximum-degree node, lowest index on ties.
int default_observation_node(const Graph& g);

}  // namespace gsamp
