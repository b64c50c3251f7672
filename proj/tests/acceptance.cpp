// Acceptance checks. `acceptance N` runs criterion N, no argument runs all.
// One PASS/FAIL line per criterion on stdout.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gsamp/baselines.hpp"
#include "gsamp/errors.hpp"
#include "gsamp/harness.hpp"
#include "gsamp/linalg.hpp"

using namespace gsamp;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

BasisPursuitParams experiment_solver() {
  BasisPursuitParams p;
  p.relaxation = 1.8;
  p.abs_tol = 1e-6;
  p.rel_tol = 1e-6;
  p.max_iter = 5000;
  return p;
}

std::vector<double> m_grid(int lo, int hi, int step) {
  std::vector<double> v;
  for (int m = lo; m <= hi; m += step) v.push_back(m);
  return v;
}

// smallest sweep value reaching the target probability, +inf if none
double first_reaching(const std::vector<SweepRow>& rows, const std::string& sampler, double target) {
  for (const auto& r : rows)
    if (r.sampler == sampler && r.recovery_probability >= target) return r.value;
  return std::numeric_limits<double>::infinity();
}

double probability_at(const std::vector<SweepRow>& rows, const std::string& sampler, double value) {
  for (const auto& r : rows)
    if (r.sampler == sampler && r.value == value) return r.recovery_probability;
  return 0.0;
}

Verdict gram_identity() {
  GraphSpec spec;
  spec.n = 50;
  spec.edge_prob = 0.3;
  spec.seed = 1;
  Graph g = generate(spec);
  const int d = static_cast<int>(greedy_dominating_set(g).size());
  auto plan = build_plan(g, d, Strategy::insert_new, 1);
  const int draws = 20000;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(50, 50);
  for (int s = 0; s < draws; ++s) {
    auto op = draw_operator(plan, derive_seed(7, "gram", static_cast<std::uint64_t>(s)));
    gram.noalias() += op.phi.transpose() * op.phi;
  }
  gram /= draws;
  const double dev = max_abs(gram - Eigen::MatrixXd::Identity(50, 50));
  return {dev < 0.05, fmt("m=|D|=%d, max |mean(Phi^T Phi) - I| = %.4f over %d draws", d, dev, draws)};
}

Verdict full_rank() {
  Rng pick(2024);
  int trials = 0, full = 0, skipped = 0;
  std::map<std::string, int> per_kind;
  while (trials < 1000) {
    GraphSpec spec;
    const auto which = trials % 3;
    spec.kind = which == 0 ? GraphKind::erdos_renyi : which == 1 ? GraphKind::random_geometric : GraphKind::community;
    spec.n = 40 + static_cast<int>(pick.below(61));
    spec.seed = pick.below(1u << 30);
    Graph g = generate(spec);
    const int m = 1 + static_cast<int>(pick.below(static_cast<std::uint64_t>(spec.n)));
    SamplingPlan plan;
    try {
      plan = build_plan(g, m, Strategy::insert_new, spec.seed);
    } catch (const Infeasible&) {
      ++skipped;  // m below the dominating-set floor
      continue;
    }
    auto op = draw_operator(plan, derive_seed(spec.seed, "rank"));
    ++trials;
    ++per_kind[to_string(spec.kind)];
    full += numerical_rank(op.phi) == m;
  }
  return {full == trials, fmt("%d/%d plans full row rank (%d infeasible budgets redrawn)", full, trials, skipped)};
}

Verdict perfect_at_k() {
  GraphSpec spec;
  spec.kind = GraphKind::random_geometric;
  spec.n = 100;
  spec.radius = 0.2;
  spec.seed = 1;
  Graph g = generate(spec);
  OrthoBasis b = gft_basis(g, true);
  const int k = 20;
  auto plan = build_plan(g, k, Strategy::insert_new, 1);
  const int trials = 1000;
  int ok = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    auto sig = make_signal_spec(100, k, SupportModel::bandlimited, derive_seed(3, "signal", t));
    Eigen::VectorXd x = synthesize(b, sig);
    auto op = draw_operator(plan, derive_seed(3, "operator", t));
    auto r = ls_known_support(op, b, sig.support, measure(op, x));
    assess(r, x);
    worst = std::max(worst, r.mse_db);
    ok += r.mse_db <= -200.0;
  }
  return {ok == trials, fmt("m=k=%d, p=%d: %d/%d trials at or below -200 dB, worst %.1f dB", k, plan.hops, ok, trials,
                            worst)};
}

Verdict condition_orders() {
  ConditionConfig c;
  c.graph.kind = GraphKind::erdos_renyi;
  c.graph.n = 100;
  c.edge_probs = {0.2};
  c.k = 10;
  c.support = SupportModel::random;
  c.m_values = {20};
  c.trials = 100;
  auto rows = condition_table(c);
  double proposed = 0.0, successive = 0.0;
  for (const auto& r : rows) (r.sampler == "successive" ? successive : proposed) = r.median_condition;
  const bool ok = proposed >= 1.0 && proposed <= 50.0 && successive >= 1e10;
  return {ok, fmt("median cond at m=20: proposed %.2f (band [1, 50]), successive %.3g (needs >= 1e10)", proposed,
                  successive)};
}

Verdict noise_slope() {
  ExperimentConfig c;
  c.graph.kind = GraphKind::erdos_renyi;
  c.graph.n = 100;
  c.graph.edge_prob = 0.1;
  c.k = 10;
  c.support = SupportModel::random;
  c.samplers = {SamplerKind::proposed_insert};
  c.sweep = SweepVariable::sigma;
  c.m = 30;
  for (double e = -5.0; e <= -2.0 + 1e-9; e += 0.5) c.values.push_back(std::pow(10.0, e));
  c.shared_draws = true;
  c.trials = 200;
  auto rows = run_known_support(c);
  // least-squares slope of mean dB against log10 sigma
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log10(r.value);
    sx += x;
    sy += r.mean_mse_db;
    sxx += x * x;
    sxy += x * r.mean_mse_db;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {std::abs(slope - 20.0) <= 2.0,
          fmt("slope %.4f dB/decade over sigma in [1e-5, 1e-2] (%d points)", slope, static_cast<int>(rows.size()))};
}

Verdict phase_transition() {
  ExperimentConfig c;
  c.graph.kind = GraphKind::community;
  c.graph.n = 100;
  c.graph.communities = 20;
  c.graph.p_intra = 0.8;
  c.graph.p_inter = 0.002;
  c.graph.seed = 1;
  c.k = 10;
  c.support = SupportModel::random;
  c.samplers = {SamplerKind::proposed_insert, SamplerKind::uniform};
  c.values = m_grid(20, 100, 5);
  c.trials = 500;
  c.solver = experiment_solver();
  auto rows = run_unknown_support(c);
  const double mp = first_reaching(rows, "proposed-insert", 0.9);
  const double mu = first_reaching(rows, "uniform", 0.9);
  if (!std::isfinite(mp)) return {false, "proposed-insert never reaches 0.9"};
  const double pp = probability_at(rows, "proposed-insert", mp);
  const double pu = probability_at(rows, "uniform", mp);
  return {mp <= mu && pp - pu >= 0.1,
          fmt("m90 proposed %g, uniform %g; at m=%g: %.3f vs %.3f", mp, mu, mp, pp, pu)};
}

Verdict coherence_effect() {
  GraphSpec grid;
  grid.kind = GraphKind::grid2d;
  grid.rows = grid.cols = 10;
  GraphSpec sw;
  sw.kind = GraphKind::small_world;
  sw.n = 100;
  sw.ring_degree = 2;
  sw.rewire = 0.1;
  sw.seed = 1;

  auto mu_at_60 = [](const GraphSpec& spec) {
    Graph g = generate(spec);
    auto plan = build_plan(g, 60, Strategy::insert_new, 1);
    return graph_basis_coherence(*plan.aggregation, plan.nodes, gft_basis(g, true)).mu;
  };
  auto m90 = [](const GraphSpec& spec) {
    ExperimentConfig c;
    c.graph = spec;
    c.k = 10;
    c.support = SupportModel::bandlimited;
    c.samplers = {SamplerKind::proposed_insert};
    c.values = m_grid(20, 100, 5);
    c.trials = 300;
    c.solver = experiment_solver();
    return first_reaching(run_unknown_support(c), "proposed-insert", 0.9);
  };
  const double mu_grid = mu_at_60(grid), mu_sw = mu_at_60(sw);
  const double m_grid90 = m90(grid), m_sw90 = m90(sw);
  const bool ok = mu_grid < mu_sw && mu_sw == 1.0 && mu_grid >= 0.5 && mu_grid <= 0.85 && m_grid90 < m_sw90;
  return {ok, fmt("mu grid %.4f, small-world %.4f; m90 grid %g, small-world %g", mu_grid, mu_sw, m_grid90, m_sw90)};
}

Verdict weighted_gft() {
  auto curve = [](bool weighted) {
    ExperimentConfig c;
    c.graph.kind = GraphKind::random_geometric;
    c.graph.n = 100;
    c.graph.radius = 0.2;
    c.graph.weighted = weighted;
    c.graph.seed = 1;
    c.k = 10;
    c.support = SupportModel::bandlimited;
    c.samplers = {SamplerKind::proposed_insert};
    c.values = m_grid(20, 100, 5);
    c.trials = 500;
    c.solver = experiment_solver();
    return run_unknown_support(c);
  };
  auto binary = curve(false), weighted = curve(true);
  double worst = 0.0, at = 0.0;
  for (std::size_t i = 0; i < binary.size(); ++i) {
    const double d = std::abs(binary[i].recovery_probability - weighted[i].recovery_probability);
    if (d > worst) {
      worst = d;
      at = binary[i].value;
    }
  }
  return {worst <= 0.1, fmt("max |P_binary - P_weighted| = %.3f at m=%g over %d m values", worst, at,
                            static_cast<int>(binary.size()))};
}

// exhaustive search over supports of size <= kmax; returns the unique sparsest
// solution or nothing when the sparsest level is ambiguous
bool l0_unique(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y, int kmax, Eigen::VectorXd& out) {
  const int n = static_cast<int>(psi.cols());
  for (int s = 1; s <= kmax; ++s) {
    int found = 0;
    std::vector<int> idx(s);
    std::function<void(int, int)> rec = [&](int pos, int start) {
      if (pos == s) {
        Eigen::MatrixXd sub(psi.rows(), s);
        for (int c = 0; c < s; ++c) sub.col(c) = psi.col(idx[c]);
        const Eigen::VectorXd coef = pseudoinverse(sub) * y;
        if ((sub * coef - y).norm() <= 1e-9 * std::max(1.0, y.norm())) {
          if (++found == 1) {
            out = Eigen::VectorXd::Zero(n);
            for (int c = 0; c < s; ++c) out(idx[c]) = coef(c);
          }
        }
        return;
      }
      for (int i = start; i < n; ++i) {
        idx[pos] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
    if (found > 0) return found == 1;
  }
  return false;
}

Verdict l0_oracle() {
  Rng pick(31);
  int instances = 0, agree = 0, attempts = 0;
  BasisPursuitParams params;
  params.relaxation = 1.8;
  while (instances < 200 && attempts < 5000) {
    ++attempts;
    const int n = 8 + static_cast<int>(pick.below(9));
    const int k = 1 + static_cast<int>(pick.below(3));
    if (2 * k + 2 > n) continue;
    const int m = 2 * k + 2 + static_cast<int>(pick.below(static_cast<std::uint64_t>(n - 2 * k - 1)));
    GraphSpec spec;
    spec.n = n;
    spec.edge_prob = 0.35;
    spec.seed = pick.below(1u << 30);
    Graph g = generate(spec);
    SamplingPlan plan;
    try {
      plan = build_plan(g, m, Strategy::insert_new, spec.seed);
    } catch (const Infeasible&) {
      continue;
    }
    OrthoBasis b = gft_basis(g, true);
    auto sig = make_signal_spec(n, k, SupportModel::random, derive_seed(spec.seed, "signal"));
    Eigen::VectorXd x = synthesize(b, sig);
    auto op = draw_operator(plan, derive_seed(spec.seed, "operator"));
    const Eigen::VectorXd y = measure(op, x);
    const Eigen::MatrixXd psi = op.phi * b.u;
    Eigen::VectorXd xl0;
    if (!l0_unique(psi, y, k, xl0)) continue;
    ++instances;
    auto r = bp_l1(op, b, y, params);
    const bool a = (r.xhat_star - xl0).norm() <= 1e-5 * std::max(1.0, xl0.norm());
    agree += a;
  }
  const double rate = instances ? static_cast<double>(agree) / instances : 0.0;
  return {instances == 200 && rate >= 0.95,
          fmt("bp matches the unique l0 solution on %d/%d instances (%.1f%%)", agree, instances, 100 * rate)};
}

Verdict dominating_oracle() {
  Rng pick(77);
  int ok = 0;
  double worst_ratio = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(pick.below(12));
    const double p = 0.1 + 0.6 * pick.uniform();
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (pick.bernoulli(p)) edges.push_back({i, j, 1.0});
    Graph g(n, edges);
    auto d = greedy_dominating_set(g);
    // brute force over subsets by increasing size
    std::vector<unsigned> closed(n);
    for (int i = 0; i < n; ++i) {
      closed[i] = 1u << i;
      for (const auto& nb : g.neighbors(i)) closed[i] |= 1u << nb.node;
    }
    const unsigned all = (1u << n) - 1u;
    int best = n;
    for (unsigned mask = 1; mask <= all; ++mask) {
      const int size = __builtin_popcount(mask);
      if (size >= best) continue;
      unsigned covered = 0;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) covered |= closed[i];
      if (covered == all) best = size;
    }
    const double bound = (1.0 + std::log(g.max_degree() + 1.0)) * best;
    worst_ratio = std::max(worst_ratio, static_cast<double>(d.size()) / best);
    ok += is_dominating(g, d.nodes) && d.size() <= bound;
  }
  return {ok == 1000, fmt("%d/1000 graphs dominating and within the ln bound, worst |D|/opt = %.2f", ok, worst_ratio)};
}

Verdict wsn_tradeoff() {
  WsnScenario s;
  s.sigma = 1e-3;
  s.solver = experiment_solver();
  auto rows = wsn_experiment(s);
  std::vector<const WsnRow*> proposed;
  for (const auto& r : rows)
    if (r.method == "proposed") proposed.push_back(&r);
  bool all = true;
  std::ostringstream detail;
  for (int heads : s.cluster_heads) {
    int dominated = 0, total = 0;
    for (const auto& b : rows) {
      if (b.method != "cluster" || b.clusters != heads || b.trials == 0) continue;
      ++total;
      for (const WsnRow* p : proposed)
        if (p->trials > 0 && p->mean_power < b.mean_power && p->mse_db < b.mse_db) {
          ++dominated;
          break;
        }
    }
    all = all && dominated > 0;
    detail << " N_c=" << heads << ": " << dominated << "/" << total << " baseline points dominated;";
  }
  for (const auto& r : rows)
    std::fprintf(stderr, "  %-8s N_c=%-3d m=%-3d power=%10.3f (intra %8.3f) mse=%8.2f dB failed=%d\n",
                 r.method.c_str(), r.clusters, r.m, r.mean_power, r.mean_intra, r.mse_db, r.failed);
  return {all, detail.str()};
}

Verdict cycle_coherence() {
  double worst = 0.0;
  for (int n : {16, 64}) {
    GraphSpec spec;
    spec.kind = GraphKind::cycle;
    spec.n = n;
    Graph g = generate(spec);
    OrthoBasis b = gft_basis(g, true);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    auto c = graph_basis_coherence(g, all, b);
    const double expected = std::min(std::sqrt(3.0) * b.u.cwiseAbs().maxCoeff(), 1.0);
    worst = std::max(worst, std::abs(c.mu - expected));
  }
  return {worst <= 1e-10, fmt("max |mu - min(sqrt(3) ||U||_max, 1)| = %.2e for n in {16, 64}", worst)};
}

struct Criterion {
  const char* name;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {"gram identity", gram_identity},
    {"full row rank", full_rank},
    {"perfect reconstruction at m = k", perfect_at_k},
    {"condition number orders", condition_orders},
    {"noise slope", noise_slope},
    {"phase transition ordering", phase_transition},
    {"coherence effect", coherence_effect},
    {"weighted gft insensitivity", weighted_gft},
    {"l0 oracle equivalence", l0_oracle},
    {"dominating set oracle", dominating_oracle},
    {"wsn power tradeoff", wsn_tradeoff},
    {"cycle coherence", cycle_coherence},
};

}  // namespace

int main(int argc, char** argv) {
  const int count = static_cast<int>(std::size(kCriteria));
  std::vector<int> which;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > count) {
      std::fprintf(stderr, "usage: acceptance [1..%d]\n", count);
      return 2;
    }
    which.push_back(n);
  } else {
    for (int i = 1; i <= count; ++i) which.push_back(i);
  }
  int failed = 0;
  for (int i : which) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = kCriteria[i - 1].run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i, kCriteria[i - 1].name, v.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed ? 1 : 0;
}
