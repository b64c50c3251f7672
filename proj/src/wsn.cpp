#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>

#include "gsamp/errors.hpp"
#include "gsamp/harness.hpp"

namespace gsamp {

using nlohmann::json;

namespace {

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

void require_positions(const Graph& g, const char* what) {
  if (!g.has_positions()) throw InvalidArgument(std::string(what) + ": graph has no node positions");
}

}  // namespace

void WsnScenario::validate() const {
  if (n < 2) throw InvalidArgument("wsn: n must be >= 2");
  if (!(bs_factor > 0.0)) throw InvalidArgument("wsn: base station distance factor must be positive");
  if (!(radius > 0.0 && radius <= std::sqrt(2.0))) throw InvalidArgument("wsn: radius must lie in (0, sqrt(2)]");
  if (k < 1 || k > n) throw InvalidArgument("wsn: k must lie in [1, n]");
  if (!(sigma >= 0.0)) throw InvalidArgument("wsn: sigma must be non-negative");
  for (int h : cluster_heads)
    if (h < 1 || h > n) throw InvalidArgument("wsn: cluster head counts must lie in [1, n]");
  if (m_values.empty()) throw InvalidArgument("wsn: at least one m value required");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] < 1 || m_values[i] > n) throw InvalidArgument("wsn: m values must lie in [1, n]");
    if (i > 0 && m_values[i - 1] >= m_values[i]) throw InvalidArgument("wsn: m values must be strictly increasing");
  }
  if (trials < 1) throw InvalidArgument("wsn: trials must be >= 1");
  if (max_redraws < 0) throw InvalidArgument("wsn: max_redraws must be non-negative");
}

WsnScenario wsn_scenario_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("wsn config: expected a JSON object");
  static const char* allowed[] = {"n",      "bs_factor",   "radius", "k",    "sigma", "cluster_heads", "m_values",
                                  "trials", "max_redraws", "seed",   "output", "solver"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(std::begin(allowed), std::end(allowed), [&](const char* a) { return it.key() == a; }))
      throw InvalidArgument("wsn config: unknown key '" + it.key() + "'");
  WsnScenario s;
  try {
    s.n = j.value("n", s.n);
    s.bs_factor = j.value("bs_factor", s.bs_factor);
    s.radius = j.value("radius", s.radius);
    s.k = j.value("k", s.k);
    s.sigma = j.value("sigma", s.sigma);
    s.cluster_heads = j.value("cluster_heads", s.cluster_heads);
    s.m_values = j.value("m_values", s.m_values);
    s.trials = j.value("trials", s.trials);
    s.max_redraws = j.value("max_redraws", s.max_redraws);
    s.seed = j.value("seed", s.seed);
    s.output = j.value("output", s.output);
    if (j.contains("solver")) {
      const json& p = j["solver"];
      s.solver.rho = p.value("rho", s.solver.rho);
      s.solver.relaxation = p.value("relaxation", s.solver.relaxation);
      s.solver.abs_tol = p.value("abs_tol", s.solver.abs_tol);
      s.solver.rel_tol = p.value("rel_tol", s.solver.rel_tol);
      s.solver.feas_tol = p.value("feas_tol", s.solver.feas_tol);
      s.solver.max_iter = p.value("max_iter", s.solver.max_iter);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("wsn config: ") + e.what());
  }
  s.validate();
  return s;
}

json to_json(const WsnScenario& s) {
  return {{"n", s.n},
          {"bs_factor", s.bs_factor},
          {"radius", s.radius},
          {"k", s.k},
          {"sigma", s.sigma},
          {"cluster_heads", s.cluster_heads},
          {"m_values", s.m_values},
          {"trials", s.trials},
          {"max_redraws", s.max_redraws},
          {"seed", s.seed},
          {"output", s.output},
          {"solver",
           {{"rho", s.solver.rho},
            {"relaxation", s.solver.relaxation},
            {"abs_tol", s.solver.abs_tol},
            {"rel_tol", s.solver.rel_tol},
            {"feas_tol", s.solver.feas_tol},
            {"max_iter", s.solver.max_iter}}}};
}

OrthoBasis spatial_dct_basis(const Graph& g) {
  require_positions(g, "spatial_dct_basis");
  const int n = g.size();
  const auto pos = g.positions();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (pos[a].x != pos[b].x) return pos[a].x < pos[b].x;
    return pos[a].y < pos[b].y;
  });
  const OrthoBasis dct = dct_basis(n);
  OrthoBasis out;
  out.u.resize(n, n);
  for (int r = 0; r < n; ++r) out.u.row(order[r]) = dct.u.row(r);
  out.ordering = Ordering::natural;
  out.label = "dct-spatial";
  return out;
}

PowerLedger proposed_power(const Graph& g, const SamplingPlan& plan, double d_bs) {
  require_positions(g, "proposed_power");
  const auto pos = g.positions();
  const int n = g.size();
  PowerLedger ledger;
  std::vector<int> depth(n);
  std::vector<double> cost(n);
  std::deque<int> queue;
  for (int root : plan.nodes) {
    std::fill(depth.begin(), depth.end(), -1);
    depth[root] = 0;
    cost[root] = 0.0;
    queue.assign(1, root);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (depth[u] == plan.hops) continue;
      for (const auto& nb : g.neighbors(u)) {
        if (depth[nb.node] >= 0) continue;
        depth[nb.node] = depth[u] + 1;
        cost[nb.node] = cost[u] + squared_distance(pos[u], pos[nb.node]);
        ledger.intra += cost[nb.node];
        queue.push_back(nb.node);
      }
    }
  }
  ledger.bs = static_cast<double>(plan.measurements()) * d_bs * d_bs;
  ledger.total = ledger.intra + ledger.bs;
  return ledger;
}

ClusterDraw draw_clusters(const Graph& g, int heads, int m, Seed seed, int max_redraws) {
  require_positions(g, "draw_clusters");
  const int n = g.size();
  if (heads < 1 || heads > n) throw InvalidArgument("draw_clusters: head count must lie in [1, n]");
  if (m < 1 || m > n) throw InvalidArgument("draw_clusters: m must lie in [1, n]");
  const auto pos = g.positions();
  for (int attempt = 0; attempt <= max_redraws; ++attempt) {
    ClusterDraw draw;
    draw.redraws = attempt;
    Rng rng(attempt == 0 ? seed : derive_seed(seed, "redraw", static_cast<std::uint64_t>(attempt)));
    draw.heads = sample_without_replacement(rng, n, heads);
    std::sort(draw.heads.begin(), draw.heads.end());
    draw.cluster.assign(n, 0);
    std::vector<long long> size(heads, 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = squared_distance(pos[i], pos[draw.heads[0]]);
      for (int c = 1; c < heads; ++c) {
        const double d = squared_distance(pos[i], pos[draw.heads[c]]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      draw.cluster[i] = best;
      ++size[best];
    }
    // largest remainder on m * size / n, exact in integers
    draw.allocation.assign(heads, 0);
    std::vector<long long> remainder(heads);
    long long assigned = 0;
    for (int c = 0; c < heads; ++c) {
      draw.allocation[c] = static_cast<int>(m * size[c] / n);
      remainder[c] = m * size[c] % n;
      assigned += draw.allocation[c];
    }
    std::vector<int> order(heads);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return remainder[a] > remainder[b]; });
    for (long long i = 0; assigned < m; ++i, ++assigned) ++draw.allocation[order[i]];
    if (std::all_of(draw.allocation.begin(), draw.allocation.end(), [](int a) { return a > 0; })) return draw;
  }
  throw Infeasible("draw_clusters: every head draw left a cluster without measurements");
}

SamplingOperator cluster_operator(const Graph& g, const ClusterDraw& draw, Seed seed) {
  const int n = g.size();
  const int heads = static_cast<int>(draw.heads.size());
  std::vector<std::vector<int>> members(heads);
  for (int i = 0; i < n; ++i) members[draw.cluster[i]].push_back(i);
  const int m = std::accumulate(draw.allocation.begin(), draw.allocation.end(), 0);
  SamplingOperator op;
  op.phi = Eigen::MatrixXd::Zero(m, n);
  op.seed = seed;
  op.method = "cluster";
  Rng rng(seed);
  int row = 0;
  for (int c = 0; c < heads; ++c)
    for (int r = 0; r < draw.allocation[c]; ++r, ++row)
      for (int j : members[c]) op.phi(row, j) = rng.gaussian();
  return op;
}

PowerLedger cluster_power(const Graph& g, const ClusterDraw& draw, double d_bs) {
  require_positions(g, "cluster_power");
  const auto pos = g.positions();
  PowerLedger ledger;
  int m = 0;
  for (int a : draw.allocation) m += a;
  for (int i = 0; i < g.size(); ++i) {
    const int c = draw.cluster[i];
    const int head = draw.heads[c];
    if (i == head) continue;
    ledger.intra += draw.allocation[c] * squared_distance(pos[i], pos[head]);
  }
  ledger.bs = static_cast<double>(m) * d_bs * d_bs;
  ledger.total = ledger.intra + ledger.bs;
  return ledger;
}

std::vector<WsnRow> wsn_experiment(const WsnScenario& s, Exec exec) {
  s.validate();
  GraphSpec spec;
  spec.kind = GraphKind::random_geometric;
  spec.n = s.n;
  spec.radius = s.radius;
  spec.seed = derive_seed(s.seed, "network");
  const Graph g = generate(spec);
  const OrthoBasis basis = spatial_dct_basis(g);
  const double d_bs = s.bs_distance();

  struct Outcome {
    bool failed = false;
    PowerLedger power;
    double mse = 0.0;
    bool perfect = false;
    int redraws = 0;
  };

  auto summarize = [&](std::string method, int clusters, int m, const std::vector<Outcome>& outs) {
    WsnRow row;
    row.method = std::move(method);
    row.clusters = clusters;
    row.m = m;
    double linear = 0.0;
    int perfect = 0;
    for (const auto& o : outs) {
      if (o.failed) {
        ++row.failed;
        continue;
      }
      ++row.trials;
      row.mean_power += o.power.total;
      row.mean_intra += o.power.intra;
      row.mean_bs += o.power.bs;
      row.mean_mse_db += o.mse;
      linear += std::pow(10.0, o.mse / 10.0);
      perfect += o.perfect;
      row.redraws += o.redraws;
    }
    if (row.trials > 0) {
      const double t = row.trials;
      row.mean_power /= t;
      row.mean_intra /= t;
      row.mean_bs /= t;
      row.mean_mse_db /= t;
      row.mse_db = std::max(10.0 * std::log10(linear / t), kMseFloorDb);
      row.recovery_probability = perfect / t;
    }
    return row;
  };

  auto signal_for = [&](int m, std::int64_t t) {
    const auto spec = make_signal_spec(s.n, s.k, SupportModel::random,
                                       derive_seed(s.seed, "signal", static_cast<std::uint64_t>(m),
                                                   static_cast<std::uint64_t>(t)));
    return synthesize(basis, spec);
  };

  // noisy node values; shared across methods for the same (m, trial)
  auto noisy_for = [&](const Eigen::VectorXd& x, int m, std::int64_t t) {
    Eigen::VectorXd v = x;
    if (s.sigma > 0.0) {
      Rng rng(derive_seed(s.seed, "noise", static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t)));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += s.sigma * rng.gaussian();
    }
    return v;
  };

  std::vector<WsnRow> rows;
  for (int m : s.m_values) {
    std::vector<Outcome> outs(s.trials);
    std::optional<SamplingPlan> plan;
    try {
      plan = build_plan(g, m, Strategy::insert_new, derive_seed(s.seed, "plan", static_cast<std::uint64_t>(m)));
    } catch (const Infeasible&) {
      for (auto& o : outs) o.failed = true;
    }
    if (plan) {
      const PowerLedger power = proposed_power(g, *plan, d_bs);
      for_each_index(s.trials, exec, [&](std::int64_t t) {
        const Eigen::VectorXd x = signal_for(m, t);
        const auto op = draw_operator(*plan, derive_seed(s.seed, "proposed", static_cast<std::uint64_t>(m),
                                                         static_cast<std::uint64_t>(t)));
        ReconResult r = bp_l1(op, basis, measure(op, noisy_for(x, m, t)), s.solver);
        assess(r, x);
        outs[t].power = power;
        outs[t].mse = r.mse_db;
        outs[t].perfect = r.perfect;
      });
    }
    rows.push_back(summarize("proposed", 0, m, outs));
  }

  for (int heads : s.cluster_heads) {
    for (int m : s.m_values) {
      std::vector<Outcome> outs(s.trials);
      for_each_index(s.trials, exec, [&](std::int64_t t) {
        const auto hk = static_cast<std::uint64_t>(heads);
        const auto mk = static_cast<std::uint64_t>(m);
        const auto tk = static_cast<std::uint64_t>(t);
        ClusterDraw draw;
        try {
          draw = draw_clusters(g, heads, m, derive_seed(s.seed, "heads", hk, mk, tk), s.max_redraws);
        } catch (const Infeasible&) {
          outs[t].failed = true;
          outs[t].redraws = s.max_redraws;
          return;
        }
        const Eigen::VectorXd x = signal_for(m, t);
        const auto op = cluster_operator(g, draw, derive_seed(s.seed, "cluster", hk, mk, tk));
        ReconResult r = bp_l1(op, basis, measure(op, noisy_for(x, m, t)), s.solver);
        assess(r, x);
        outs[t].power = cluster_power(g, draw, d_bs);
        outs[t].mse = r.mse_db;
        outs[t].perfect = r.perfect;
        outs[t].redraws = draw.redraws;
      });
      rows.push_back(summarize("cluster", heads, m, outs));
    }
  }
  return rows;
}

}  // namespace gsamp
