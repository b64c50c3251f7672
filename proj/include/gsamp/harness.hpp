#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gsamp/graph.hpp"
#include "gsamp/parallel.hpp"
#include "gsamp/recon.hpp"
#include "gsamp/rng.hpp"
#include "gsamp/sampler.hpp"
#include "gsamp/spectral.hpp"

namespace gsamp {

inline constexpr const char* kVersion = "0.1.0";

enum class SamplerKind { proposed_repeat, proposed_insert, uniform, weighted, minpinv, successive };

SamplerKind parse_sampler(std::string_view name);
std::string to_string(SamplerKind kind);

enum class BasisKind { gft_normalized, gft_combinatorial, dct };

BasisKind parse_basis(std::string_view name);
std::string to_string(BasisKind kind);
OrthoBasis make_basis(const Graph& g, BasisKind kind);

/// Generated graph, or the edge list at `file` when it is non-empty.
Graph load_graph(const GraphSpec& spec, const std::string& file);

enum class SweepVariable { m, sigma };

SweepVariable parse_sweep_variable(std::string_view name);
std::string to_string(SweepVariable v);

struct ExperimentConfig {
  GraphSpec graph;
  std::string graph_file;
  BasisKind basis = BasisKind::gft_normalized;
  int k = 10;
  SupportModel support = SupportModel::bandlimited;
  std::vector<SamplerKind> samplers{SamplerKind::proposed_insert};
  SweepVariable sweep = SweepVariable::m;
  std::vector<double> values;
  int m = 0;           ///< measurements for a sigma sweep
  double sigma = 0.0;  ///< noise level for an m sweep
  /// Draw signals, noise and operators independently of the sweep value, so
  /// every sweep point sees the same random inputs.
  bool shared_draws = false;
  int trials = 100;
  Seed seed = 1;
  std::string output;
  BasisPursuitParams solver;

  void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

struct SweepRow {
  std::string sampler;
  double value = 0.0;  ///< m or sigma
  int trials = 0;      ///< completed trials
  int failed = 0;      ///< trials whose sampler was infeasible
  int not_converged = 0;
  double mean_mse_db = 0.0;
  double recovery_probability = 0.0;  ///< fraction with mse_db < -40
};

/// Least squares on the true support. One row per (sampler, sweep value).
std::vector<SweepRow> run_known_support(const ExperimentConfig& config, Exec exec = Exec::parallel);

/// Basis pursuit without support knowledge; noiseless configs only.
std::vector<SweepRow> run_unknown_support(const ExperimentConfig& config, Exec exec = Exec::parallel);

struct ConditionConfig {
  GraphSpec graph;
  std::vector<double> edge_probs{0.2};  ///< overrides graph.edge_prob per table block
  BasisKind basis = BasisKind::gft_normalized;
  int k = 10;
  SupportModel support = SupportModel::random;
  std::vector<int> m_values{10, 20, 100};
  std::vector<SamplerKind> samplers{SamplerKind::proposed_insert, SamplerKind::successive};
  int trials = 100;
  Seed seed = 1;
  std::string output;

  void validate() const;
};

ConditionConfig condition_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConditionConfig& c);

struct ConditionRow {
  double edge_prob = 0.0;
  std::string sampler;
  int m = 0;
  int trials = 0;
  int failed = 0;
  double median_condition = 0.0;
};

/// Median condition number of Φ U_S. Each trial draws its own graph,
/// support and operator.
std::vector<ConditionRow> condition_table(const ConditionConfig& config, Exec exec = Exec::parallel);

struct DominatingConfig {
  GraphSpec graph;
  std::string graph_file;
  int p_max = 5;
  std::string output;

  void validate() const;
};

DominatingConfig dominating_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DominatingConfig& c);

struct DominatingRow {
  int hops = 1;
  int size = 0;
};

/// Greedy dominating-set size on the p-hop graph, p = 1..p_max.
std::vector<DominatingRow> dominating_curve(const Graph& g, int p_max, Exec exec = Exec::parallel);

/// Sensors in the unit square; the base station sits bs_factor sides away.
struct WsnScenario {
  int n = 250;
  double bs_factor = 5.0;
  double radius = 0.2;
  int k = 50;
  double sigma = 0.0;  ///< node-domain noise, y = Φ(x + n)
  std::vector<int> cluster_heads{5, 15, 30};
  std::vector<int> m_values{100, 125, 150, 175, 200};
  int trials = 50;
  int max_redraws = 100;
  Seed seed = 1;
  std::string output;
  BasisPursuitParams solver;

  double bs_distance() const noexcept { return bs_factor; }
  void validate() const;
};

WsnScenario wsn_scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WsnScenario& s);

struct PowerLedger {
  double intra = 0.0;
  double bs = 0.0;
  double total = 0.0;
};

/// DCT over node index after sorting nodes by (x, y) position.
OrthoBasis spatial_dct_basis(const Graph& g);

/// Every node within p hops of a sampling node forwards its value along the
/// BFS tree rooted there, paying the squared length of each hop, once per
/// measurement. Each measurement then travels d_bs to the base station.
PowerLedger proposed_power(const Graph& g, const SamplingPlan& plan, double d_bs);

struct ClusterDraw {
  std::vector<int> heads;
  std::vector<int> cluster;      ///< cluster index per node (position in `heads`)
  std::vector<int> allocation;   ///< measurements per cluster, summing to m
  int redraws = 0;
};

/// Uniformly random heads, members join the nearest head (lowest head index
/// on ties), measurements split by the largest-remainder rule. Head sets that
/// leave a cluster without measurements are redrawn; Infeasible after
/// `max_redraws` attempts.
ClusterDraw draw_clusters(const Graph& g, int heads, int m, Seed seed, int max_redraws);

/// Block-diagonal standard Gaussian rows, clusters in head order.
SamplingOperator cluster_operator(const Graph& g, const ClusterDraw& draw, Seed seed);

PowerLedger cluster_power(const Graph& g, const ClusterDraw& draw, double d_bs);

struct WsnRow {
  std::string method;  ///< "proposed" or "cluster"
  int clusters = 0;
  int m = 0;
  int trials = 0;
  int failed = 0;
  double mean_power = 0.0;
  double mean_intra = 0.0;
  double mean_bs = 0.0;
  double mse_db = 0.0;       ///< 10 log10 of the mean linear MSE
  double mean_mse_db = 0.0;  ///< mean of per-trial dB values
  double recovery_probability = 0.0;
  int redraws = 0;
};

std::vector<WsnRow> wsn_experiment(const WsnScenario& scenario, Exec exec = Exec::parallel);

struct RuntimeConfig {
  GraphSpec graph;
  std::string graph_file;
  BasisKind basis = BasisKind::gft_normalized;
  int k = 10;
  std::vector<SamplerKind> samplers{SamplerKind::proposed_insert, SamplerKind::minpinv};
  std::vector<int> m_values{50, 100};
  int repetitions = 3;
  Seed seed = 1;
  std::string output;

  void validate() const;
};

RuntimeConfig runtime_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RuntimeConfig& c);

struct RuntimeRow {
  std::string sampler;
  int m = 0;
  int repetition = 0;
  double seconds = 0.0;
};

/// Wall-clock time of plan construction and operator draw, including the
/// eigendecomposition for methods that read the basis. Runs serially.
std::vector<RuntimeRow> runtime_benchmark(const RuntimeConfig& config);

/// FNV-1a over the compact JSON dump.
std::uint64_t config_hash(const nlohmann::json& config);

/// "# config-hash=<hex>, seed=<n>, version=<v>"
void write_csv_meta(std::ostream& out, std::uint64_t hash, Seed seed);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::string_view variable);
void write_csv(std::ostream& out, const std::vector<ConditionRow>& rows);
void write_csv(std::ostream& out, const std::vector<DominatingRow>& rows);
void write_csv(std::ostream& out, const std::vector<WsnRow>& rows);
void write_csv(std::ostream& out, const std::vector<RuntimeRow>& rows);

}  // namespace gsamp
