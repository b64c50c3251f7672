#include "gsamp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>

#include "gsamp/baselines.hpp"
#include "gsamp/errors.hpp"
#include "gsamp/linalg.hpp"

namespace gsamp {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!j.is_object()) throw InvalidArgument(std::string(what) + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw InvalidArgument(std::string(what) + ": unknown key '" + it.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
  }
}

std::string read_string(const json& j, const char* key, std::string fallback) {
  read(j, key, fallback);
  return fallback;
}

void read_graph(const json& j, GraphSpec& spec, std::string* file) {
  if (file)
    check_keys(j, {"kind", "n", "edge_prob", "radius", "weighted", "communities", "p_intra", "p_inter", "rows",
                   "cols", "ring_degree", "rewire", "seed", "file"},
               "graph");
  else
    check_keys(j, {"kind", "n", "edge_prob", "radius", "weighted", "communities", "p_intra", "p_inter", "rows",
                   "cols", "ring_degree", "rewire", "seed"},
               "graph");
  spec.kind = parse_graph_kind(read_string(j, "kind", to_string(spec.kind)));
  read(j, "n", spec.n);
  read(j, "edge_prob", spec.edge_prob);
  read(j, "radius", spec.radius);
  read(j, "weighted", spec.weighted);
  read(j, "communities", spec.communities);
  read(j, "p_intra", spec.p_intra);
  read(j, "p_inter", spec.p_inter);
  read(j, "rows", spec.rows);
  read(j, "cols", spec.cols);
  read(j, "ring_degree", spec.ring_degree);
  read(j, "rewire", spec.rewire);
  read(j, "seed", spec.seed);
  if (file) read(j, "file", *file);
}

json graph_json(const GraphSpec& s, const std::string& file) {
  json j = {{"kind", to_string(s.kind)}, {"n", s.n}, {"edge_prob", s.edge_prob}, {"radius", s.radius},
            {"weighted", s.weighted}, {"communities", s.communities}, {"p_intra", s.p_intra},
            {"p_inter", s.p_inter}, {"rows", s.rows}, {"cols", s.cols}, {"ring_degree", s.ring_degree},
            {"rewire", s.rewire}, {"seed", s.seed}};
  if (!file.empty()) j["file"] = file;
  return j;
}

void read_solver(const json& j, BasisPursuitParams& p) {
  check_keys(j, {"rho", "relaxation", "abs_tol", "rel_tol", "feas_tol", "max_iter"}, "solver");
  read(j, "rho", p.rho);
  read(j, "relaxation", p.relaxation);
  read(j, "abs_tol", p.abs_tol);
  read(j, "rel_tol", p.rel_tol);
  read(j, "feas_tol", p.feas_tol);
  read(j, "max_iter", p.max_iter);
}

json solver_json(const BasisPursuitParams& p) {
  return {{"rho", p.rho}, {"relaxation", p.relaxation}, {"abs_tol", p.abs_tol}, {"rel_tol", p.rel_tol},
          {"feas_tol", p.feas_tol}, {"max_iter", p.max_iter}};
}

void validate_solver(const BasisPursuitParams& p) {
  if (!(p.rho > 0.0)) throw InvalidArgument("solver: rho must be positive");
  if (!(p.relaxation > 0.0 && p.relaxation < 2.0)) throw InvalidArgument("solver: relaxation must lie in (0, 2)");
  if (!(p.abs_tol > 0.0) || !(p.rel_tol > 0.0) || !(p.feas_tol > 0.0))
    throw InvalidArgument("solver: tolerances must be positive");
  if (p.max_iter < 1) throw InvalidArgument("solver: max_iter must be positive");
}

std::vector<SamplerKind> read_samplers(const json& j, const char* key, std::vector<SamplerKind> fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_array()) throw InvalidArgument(std::string("config key '") + key + "': expected an array");
  std::vector<SamplerKind> out;
  for (const auto& s : *it) {
    if (!s.is_string()) throw InvalidArgument(std::string("config key '") + key + "': expected sampler names");
    out.push_back(parse_sampler(s.get<std::string>()));
  }
  return out;
}

json samplers_json(const std::vector<SamplerKind>& samplers) {
  json j = json::array();
  for (auto s : samplers) j.push_back(to_string(s));
  return j;
}

template <class T>
void require_increasing(const std::vector<T>& v, const char* what) {
  if (v.empty()) throw InvalidArgument(std::string(what) + ": at least one value required");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i - 1] < v[i])) throw InvalidArgument(std::string(what) + ": values must be strictly increasing");
}

bool is_proposed(SamplerKind kind) {
  return kind == SamplerKind::proposed_repeat || kind == SamplerKind::proposed_insert;
}

Strategy strategy_of(SamplerKind kind) {
  return kind == SamplerKind::proposed_repeat ? Strategy::repeat_dominating : Strategy::insert_new;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  if (v.size() % 2) return v[h];
  return 0.5 * (v[h - 1] + v[h]);
}

Eigen::MatrixXd restrict_columns(const Eigen::MatrixXd& u, std::span<const int> support) {
  Eigen::MatrixXd out(u.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = u.col(support[c]);
  return out;
}

// Operator for one trial. Proposed samplers read the prebuilt plan.
SamplingOperator draw_sampler(SamplerKind kind, const Graph& g, const OrthoBasis& basis, const SamplingPlan* plan,
                              int m, std::span<const int> support, Seed seed) {
  switch (kind) {
    case SamplerKind::proposed_repeat:
    case SamplerKind::proposed_insert:
      return draw_operator(*plan, seed);
    case SamplerKind::uniform:
      return uniform_node_sampling(g.size(), m, seed);
    case SamplerKind::weighted:
      return weighted_node_sampling(basis, support, m, seed);
    case SamplerKind::minpinv:
      return minpinv_greedy(basis, support, m);
    case SamplerKind::successive:
      return successive_aggregations(g, default_observation_node(g), m);
  }
  throw std::logic_error("draw_sampler: unhandled sampler");
}

struct TrialOutcome {
  bool failed = false;
  bool converged = true;
  bool perfect = false;
  double mse = 0.0;
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, Exec exec, bool l1) {
  config.validate();
  const Graph g = load_graph(config.graph, config.graph_file);
  const int n = g.size();
  if (config.k > n) throw InvalidArgument("experiment: k exceeds the number of nodes");
  const OrthoBasis basis = make_basis(g, config.basis);

  std::vector<SweepRow> rows;
  for (SamplerKind kind : config.samplers) {
    const std::string tag = to_string(kind);
    for (double value : config.values) {
      const int m = config.sweep == SweepVariable::m ? static_cast<int>(value) : config.m;
      const double sigma = config.sweep == SweepVariable::sigma ? value : config.sigma;
      const std::uint64_t key = config.shared_draws ? 0 : key_of(value);

      std::optional<SamplingPlan> plan;
      bool plan_failed = false;
      if (is_proposed(kind)) {
        try {
          plan = build_plan(g, m, strategy_of(kind), derive_seed(config.seed, "plan", static_cast<std::uint64_t>(m)));
        } catch (const Infeasible&) {
          plan_failed = true;
        }
      }

      std::vector<TrialOutcome> outcomes(config.trials);
      if (plan_failed) {
        for (auto& o : outcomes) o.failed = true;
      } else {
        for_each_index(config.trials, exec, [&](std::int64_t t) {
          const auto trial = static_cast<std::uint64_t>(t);
          const auto signal = make_signal_spec(n, config.k, config.support,
                                               derive_seed(config.seed, "signal", key, trial));
          const Eigen::VectorXd x = synthesize(basis, signal);
          TrialOutcome& out = outcomes[t];
          SamplingOperator op;
          try {
            op = draw_sampler(kind, g, basis, plan ? &*plan : nullptr, m, signal.support,
                              derive_seed(config.seed, tag, key, trial));
          } catch (const Infeasible&) {
            out.failed = true;
            return;
          }
          Eigen::VectorXd noisy = x;
          if (sigma > 0.0) {
            Rng rng(derive_seed(config.seed, "noise", key, trial));
            for (int i = 0; i < n; ++i) noisy(i) += sigma * rng.gaussian();
          }
          const Eigen::VectorXd y = measure(op, noisy);
          ReconResult r = l1 ? bp_l1(op, basis, y, config.solver) : ls_known_support(op, basis, signal.support, y);
          assess(r, x);
          out.converged = r.stats.converged;
          out.perfect = r.perfect;
          out.mse = r.mse_db;
        });
      }

      SweepRow row;
      row.sampler = tag;
      row.value = value;
      double sum = 0.0;
      int perfect = 0;
      for (const auto& o : outcomes) {
        if (o.failed) {
          ++row.failed;
          continue;
        }
        ++row.trials;
        sum += o.mse;
        perfect += o.perfect;
        row.not_converged += !o.converged;
      }
      if (row.trials > 0) {
        row.mean_mse_db = sum / row.trials;
        row.recovery_probability = static_cast<double>(perfect) / row.trials;
      } else {
        row.mean_mse_db = std::numeric_limits<double>::quiet_NaN();
        row.recovery_probability = std::numeric_limits<double>::quiet_NaN();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace

SamplerKind parse_sampler(std::string_view name) {
  if (name == "proposed-repeat") return SamplerKind::proposed_repeat;
  if (name == "proposed-insert") return SamplerKind::proposed_insert;
  if (name == "uniform") return SamplerKind::uniform;
  if (name == "weighted") return SamplerKind::weighted;
  if (name == "minpinv") return SamplerKind::minpinv;
  if (name == "successive") return SamplerKind::successive;
  throw InvalidArgument("unknown sampler '" + std::string(name) + "'");
}

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::proposed_repeat: return "proposed-repeat";
    case SamplerKind::proposed_insert: return "proposed-insert";
    case SamplerKind::uniform: return "uniform";
    case SamplerKind::weighted: return "weighted";
    case SamplerKind::minpinv: return "minpinv";
    case SamplerKind::successive: return "successive";
  }
  return "?";
}

BasisKind parse_basis(std::string_view name) {
  if (name == "gft-normalized") return BasisKind::gft_normalized;
  if (name == "gft-combinatorial") return BasisKind::gft_combinatorial;
  if (name == "dct") return BasisKind::dct;
  throw InvalidArgument("unknown basis '" + std::string(name) + "'");
}

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::gft_normalized: return "gft-normalized";
    case BasisKind::gft_combinatorial: return "gft-combinatorial";
    case BasisKind::dct: return "dct";
  }
  return "?";
}

OrthoBasis make_basis(const Graph& g, BasisKind kind) {
  switch (kind) {
    case BasisKind::gft_normalized: return gft_basis(g, true);
    case BasisKind::gft_combinatorial: return gft_basis(g, false);
    case BasisKind::dct: return dct_basis(g.size());
  }
  throw std::logic_error("make_basis: unhandled basis");
}

Graph load_graph(const GraphSpec& spec, const std::string& file) {
  if (!file.empty()) return load_edge_list(file);
  return generate(spec);
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "m") return SweepVariable::m;
  if (name == "sigma") return SweepVariable::sigma;
  throw InvalidArgument("unknown sweep variable '" + std::string(name) + "'");
}

std::string to_string(SweepVariable v) { return v == SweepVariable::m ? "m" : "sigma"; }

void ExperimentConfig::validate() const {
  if (graph_file.empty()) graph.validate();
  if (k < 1) throw InvalidArgument("config: k must be positive");
  if (trials < 1) throw InvalidArgument("config: trials must be >= 1");
  if (samplers.empty()) throw InvalidArgument("config: at least one sampler required");
  require_increasing(values, "config: sweep");
  if (sweep == SweepVariable::m) {
    for (double v : values)
      if (!(v >= 1.0) || v != std::floor(v)) throw InvalidArgument("config: m values must be positive integers");
  } else {
    if (m < 1) throw InvalidArgument("config: a sigma sweep needs m >= 1");
    for (double v : values)
      if (!(v >= 0.0)) throw InvalidArgument("config: sigma values must be non-negative");
  }
  if (!(sigma >= 0.0)) throw InvalidArgument("config: sigma must be non-negative");
  validate_solver(solver);
}

ExperimentConfig experiment_config_from_json(const json& j) {
  check_keys(j, {"graph", "basis", "signal", "samplers", "sweep", "m", "sigma", "shared_draws", "trials", "seed",
                 "output", "solver"},
             "experiment config");
  ExperimentConfig c;
  if (j.contains("graph")) read_graph(j["graph"], c.graph, &c.graph_file);
  c.basis = parse_basis(read_string(j, "basis", to_string(c.basis)));
  if (j.contains("signal")) {
    const json& s = j["signal"];
    check_keys(s, {"k", "model"}, "signal");
    read(s, "k", c.k);
    c.support = parse_support_model(read_string(s, "model", to_string(c.support)));
  }
  c.samplers = read_samplers(j, "samplers", c.samplers);
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    check_keys(s, {"variable", "values"}, "sweep");
    c.sweep = parse_sweep_variable(read_string(s, "variable", "m"));
    read(s, "values", c.values);
  }
  read(j, "m", c.m);
  read(j, "sigma", c.sigma);
  read(j, "shared_draws", c.shared_draws);
  read(j, "trials", c.trials);
  read(j, "seed", c.seed);
  read(j, "output", c.output);
  if (j.contains("solver")) read_solver(j["solver"], c.solver);
  c.validate();
  return c;
}

json to_json(const ExperimentConfig& c) {
  return {{"graph", graph_json(c.graph, c.graph_file)},
          {"basis", to_string(c.basis)},
          {"signal", {{"k", c.k}, {"model", to_string(c.support)}}},
          {"samplers", samplers_json(c.samplers)},
          {"sweep", {{"variable", to_string(c.sweep)}, {"values", c.values}}},
          {"m", c.m},
          {"sigma", c.sigma},
          {"shared_draws", c.shared_draws},
          {"trials", c.trials},
          {"seed", c.seed},
          {"output", c.output},
          {"solver", solver_json(c.solver)}};
}

std::vector<SweepRow> run_known_support(const ExperimentConfig& config, Exec exec) {
  return run_sweep(config, exec, false);
}

std::vector<SweepRow> run_unknown_support(const ExperimentConfig& config, Exec exec) {
  if (config.sweep != SweepVariable::m || config.sigma != 0.0)
    throw InvalidArgument("unknown-support experiments are noiseless m sweeps");
  return run_sweep(config, exec, true);
}

void ConditionConfig::validate() const {
  GraphSpec probe = graph;
  for (double p : edge_probs) {
    probe.edge_prob = p;
    probe.validate();
  }
  require_increasing(edge_probs, "condition table: edge_probs");
  require_increasing(m_values, "condition table: m values");
  if (m_values.front() < 1) throw InvalidArgument("condition table: m values must be positive");
  if (k < 1 || k > graph.n) throw InvalidArgument("condition table: k must lie in [1, n]");
  if (samplers.empty()) throw InvalidArgument("condition table: at least one sampler required");
  if (trials < 1) throw InvalidArgument("condition table: trials must be >= 1");
}

ConditionConfig condition_config_from_json(const json& j) {
  check_keys(j, {"graph", "edge_probs", "basis", "signal", "m_values", "samplers", "trials", "seed", "output"},
             "condition config");
  ConditionConfig c;
  c.graph.kind = GraphKind::erdos_renyi;
  if (j.contains("graph")) read_graph(j["graph"], c.graph, nullptr);
  read(j, "edge_probs", c.edge_probs);
  c.basis = parse_basis(read_string(j, "basis", to_string(c.basis)));
  if (j.contains("signal")) {
    const json& s = j["signal"];
    check_keys(s, {"k", "model"}, "signal");
    read(s, "k", c.k);
    c.support = parse_support_model(read_string(s, "model", to_string(c.support)));
  }
  read(j, "m_values", c.m_values);
  c.samplers = read_samplers(j, "samplers", c.samplers);
  read(j, "trials", c.trials);
  read(j, "seed", c.seed);
  read(j, "output", c.output);
  c.validate();
  return c;
}

json to_json(const ConditionConfig& c) {
  return {{"graph", graph_json(c.graph, "")},
          {"edge_probs", c.edge_probs},
          {"basis", to_string(c.basis)},
          {"signal", {{"k", c.k}, {"model", to_string(c.support)}}},
          {"m_values", c.m_values},
          {"samplers", samplers_json(c.samplers)},
          {"trials", c.trials},
          {"seed", c.seed},
          {"output", c.output}};
}

std::vector<ConditionRow> condition_table(const ConditionConfig& config, Exec exec) {
  config.validate();
  const std::size_t cells = config.samplers.size() * config.m_values.size();
  std::vector<ConditionRow> rows;
  for (double pe : config.edge_probs) {
    const std::uint64_t pkey = key_of(pe);
    // values[t][cell], NaN marks an infeasible sampler
    std::vector<std::vector<double>> values(config.trials, std::vector<double>(cells));
    for_each_index(config.trials, exec, [&](std::int64_t t) {
      const auto trial = static_cast<std::uint64_t>(t);
      GraphSpec spec = config.graph;
      spec.edge_prob = pe;
      spec.seed = derive_seed(config.seed, "graph", pkey, trial);
      const Graph g = generate(spec);
      const OrthoBasis basis = make_basis(g, config.basis);
      const auto signal = make_signal_spec(g.size(), config.k, config.support,
                                           derive_seed(config.seed, "support", pkey, trial));
      const Eigen::MatrixXd us = restrict_columns(basis.u, signal.support);
      std::size_t cell = 0;
      for (SamplerKind kind : config.samplers) {
        const std::string tag = to_string(kind);
        for (int m : config.m_values) {
          double value = std::numeric_limits<double>::quiet_NaN();
          try {
            std::optional<SamplingPlan> plan;
            if (is_proposed(kind))
              plan = build_plan(g, m, strategy_of(kind),
                                derive_seed(config.seed, "plan", pkey, static_cast<std::uint64_t>(m), trial));
            const auto op = draw_sampler(kind, g, basis, plan ? &*plan : nullptr, m, signal.support,
                                         derive_seed(config.seed, tag, pkey, static_cast<std::uint64_t>(m), trial));
            value = condition_number(op.phi * us);
          } catch (const Infeasible&) {
          }
          values[t][cell++] = value;
        }
      }
    });
    std::size_t cell = 0;
    for (SamplerKind kind : config.samplers) {
      for (int m : config.m_values) {
        ConditionRow row;
        row.edge_prob = pe;
        row.sampler = to_string(kind);
        row.m = m;
        std::vector<double> ok;
        for (int t = 0; t < config.trials; ++t) {
          const double v = values[t][cell];
          if (std::isnan(v)) {
            ++row.failed;
          } else {
            ok.push_back(v);
          }
        }
        row.trials = static_cast<int>(ok.size());
        row.median_condition = median(std::move(ok));
        rows.push_back(row);
        ++cell;
      }
    }
  }
  return rows;
}

void DominatingConfig::validate() const {
  if (graph_file.empty()) graph.validate();
  if (p_max < 1) throw InvalidArgument("dominating curve: p_max must be >= 1");
}

DominatingConfig dominating_config_from_json(const json& j) {
  check_keys(j, {"graph", "p_max", "output"}, "dominating config");
  DominatingConfig c;
  if (j.contains("graph")) read_graph(j["graph"], c.graph, &c.graph_file);
  read(j, "p_max", c.p_max);
  read(j, "output", c.output);
  c.validate();
  return c;
}

json to_json(const DominatingConfig& c) {
  return {{"graph", graph_json(c.graph, c.graph_file)}, {"p_max", c.p_max}, {"output", c.output}};
}

std::vector<DominatingRow> dominating_curve(const Graph& g, int p_max, Exec exec) {
  if (p_max < 1) throw InvalidArgument("dominating curve: p_max must be >= 1");
  std::vector<DominatingRow> rows;
  for (int p = 1; p <= p_max; ++p) {
    const Graph gp = p == 1 ? g : p_hop_graph(g, p, exec);
    rows.push_back({p, static_cast<int>(greedy_dominating_set(gp).size())});
  }
  return rows;
}

void RuntimeConfig::validate() const {
  if (graph_file.empty()) graph.validate();
  if (k < 1) throw InvalidArgument("runtime: k must be positive");
  if (samplers.empty()) throw InvalidArgument("runtime: at least one sampler required");
  require_increasing(m_values, "runtime: m values");
  if (m_values.front() < 1) throw InvalidArgument("runtime: m values must be positive");
  if (repetitions < 1) throw InvalidArgument("runtime: repetitions must be >= 1");
}

RuntimeConfig runtime_config_from_json(const json& j) {
  check_keys(j, {"graph", "basis", "signal", "samplers", "m_values", "repetitions", "seed", "output"},
             "runtime config");
  RuntimeConfig c;
  if (j.contains("graph")) read_graph(j["graph"], c.graph, &c.graph_file);
  c.basis = parse_basis(read_string(j, "basis", to_string(c.basis)));
  if (j.contains("signal")) {
    const json& s = j["signal"];
    check_keys(s, {"k", "model"}, "signal");
    read(s, "k", c.k);
  }
  c.samplers = read_samplers(j, "samplers", c.samplers);
  read(j, "m_values", c.m_values);
  read(j, "repetitions", c.repetitions);
  read(j, "seed", c.seed);
  read(j, "output", c.output);
  c.validate();
  return c;
}

json to_json(const RuntimeConfig& c) {
  return {{"graph", graph_json(c.graph, c.graph_file)},
          {"basis", to_string(c.basis)},
          {"signal", {{"k", c.k}}},
          {"samplers", samplers_json(c.samplers)},
          {"m_values", c.m_values},
          {"repetitions", c.repetitions},
          {"seed", c.seed},
          {"output", c.output}};
}

std::vector<RuntimeRow> runtime_benchmark(const RuntimeConfig& config) {
  config.validate();
  using clock = std::chrono::steady_clock;
  const Graph g = load_graph(config.graph, config.graph_file);
  if (config.k > g.size()) throw InvalidArgument("runtime: k exceeds the number of nodes");
  std::vector<int> support(config.k);
  for (int i = 0; i < config.k; ++i) support[i] = i;

  std::vector<RuntimeRow> rows;
  for (int m : config.m_values) {
    for (SamplerKind kind : config.samplers) {
      const std::string tag = to_string(kind);
      for (int rep = 0; rep < config.repetitions; ++rep) {
        const Seed seed = derive_seed(config.seed, tag, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(rep));
        const auto start = clock::now();
        SamplingOperator op;
        switch (kind) {
          case SamplerKind::proposed_repeat:
          case SamplerKind::proposed_insert: {
            const auto plan = build_plan(g, m, strategy_of(kind), seed);
            op = draw_operator(plan, mix64(seed));
            break;
          }
          case SamplerKind::weighted:
          case SamplerKind::minpinv: {
            const OrthoBasis basis = make_basis(g, config.basis);
            op = draw_sampler(kind, g, basis, nullptr, m, support, seed);
            break;
          }
          case SamplerKind::uniform:
          case SamplerKind::successive:
            op = draw_sampler(kind, g, OrthoBasis{}, nullptr, m, support, seed);
            break;
        }
        const double seconds = std::chrono::duration<double>(clock::now() - start).count();
        rows.push_back({tag, m, rep, seconds});
      }
    }
  }
  return rows;
}

std::uint64_t config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_csv_meta(std::ostream& out, std::uint64_t hash, Seed seed) {
  const auto flags = out.flags();
  out << "# config-hash=" << std::hex << std::setw(16) << std::setfill('0') << hash;
  out.flags(flags);
  out << std::setfill(' ') << ", seed=" << seed << ", version=" << kVersion << '\n';
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::string_view variable) {
  const auto old = out.precision(12);
  out << "sampler," << variable << ",trials,failed,not_converged,mean_mse_db,recovery_probability\n";
  for (const auto& r : rows)
    out << r.sampler << ',' << r.value << ',' << r.trials << ',' << r.failed << ',' << r.not_converged << ','
        << r.mean_mse_db << ',' << r.recovery_probability << '\n';
  out.precision(old);
}

void write_csv(std::ostream& out, const std::vector<ConditionRow>& rows) {
  const auto old = out.precision(12);
  out << "edge_prob,sampler,m,trials,failed,median_condition\n";
  for (const auto& r : rows)
    out << r.edge_prob << ',' << r.sampler << ',' << r.m << ',' << r.trials << ',' << r.failed << ','
        << r.median_condition << '\n';
  out.precision(old);
}

void write_csv(std::ostream& out, const std::vector<DominatingRow>& rows) {
  out << "p,dominating_set_size\n";
  for (const auto& r : rows) out << r.hops << ',' << r.size << '\n';
}

void write_csv(std::ostream& out, const std::vector<WsnRow>& rows) {
  const auto old = out.precision(12);
  out << "method,clusters,m,trials,failed,mean_power,mean_p_intra,mean_p_bs,mse_db,mean_mse_db,"
         "recovery_probability,redraws\n";
  for (const auto& r : rows)
    out << r.method << ',' << r.clusters << ',' << r.m << ',' << r.trials << ',' << r.failed << ','
        << r.mean_power << ',' << r.mean_intra << ',' << r.mean_bs << ',' << r.mse_db << ',' << r.mean_mse_db
        << ',' << r.recovery_probability << ',' << r.redraws << '\n';
  out.precision(old);
}

void write_csv(std::ostream& out, const std::vector<RuntimeRow>& rows) {
  const auto old = out.precision(9);
  out << "sampler,m,repetition,seconds\n";
  for (const auto& r : rows) out << r.sampler << ',' << r.m << ',' << r.repetition << ',' << r.seconds << '\n';
  out.precision(old);
}

}  // namespace gsamp
