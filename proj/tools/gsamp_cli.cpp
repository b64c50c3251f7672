#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsamp/errors.hpp"
#include "gsamp/graph.hpp"
#include "gsamp/harness.hpp"
#include "gsamp/recon.hpp"
#include "gsamp/sampler.hpp"
#include "gsamp/spectral.hpp"

using namespace gsamp;
using nlohmann::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

Eigen::MatrixXd load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_matrix_csv(in);
}

Eigen::VectorXd load_vector(const std::string& path) {
  Eigen::MatrixXd a = load_matrix(path);
  if (a.cols() == 1) return a.col(0);
  if (a.rows() == 1) return a.row(0).transpose();
  throw InvalidArgument(path + ": expected a single row or column");
}

void save_matrix(const std::string& path, const Eigen::MatrixXd& a) {
  auto out = open_out(path);
  write_matrix_csv(out, a);
}

Graph load_graph_files(const std::string& edges, const std::string& positions) {
  Graph g = load_edge_list(edges);
  if (!positions.empty()) g = load_positions(positions, g);
  return g;
}

// Writes the table to `path`, or stdout when it is empty.
template <class Write>
void emit(const std::string& path, const json& config, Seed seed, Write&& write) {
  if (path.empty()) {
    write_csv_meta(std::cout, config_hash(config), seed);
    write(std::cout);
    return;
  }
  auto out = open_out(path);
  write_csv_meta(out, config_hash(config), seed);
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph signal sampling by randomized local aggregations"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a graph and write it as an edge list");
  GraphSpec spec;
  std::string kind = "erdos-renyi", gen_config, gen_out, gen_pos;
  gen->add_option("--config", gen_config, "JSON graph spec");
  gen->add_option("--kind", kind, "erdos-renyi|random-geometric|community|grid2d|small-world|cycle|complete|path|star");
  gen->add_option("--n", spec.n);
  gen->add_option("--edge-prob", spec.edge_prob);
  gen->add_option("--radius", spec.radius);
  gen->add_flag("--weighted", spec.weighted);
  gen->add_option("--communities", spec.communities);
  gen->add_option("--p-intra", spec.p_intra);
  gen->add_option("--p-inter", spec.p_inter);
  gen->add_option("--rows", spec.rows);
  gen->add_option("--cols", spec.cols);
  gen->add_option("--ring-degree", spec.ring_degree);
  gen->add_option("--rewire", spec.rewire);
  gen->add_option("--seed", spec.seed);
  gen->add_option("--out", gen_out, "edge list path")->required();
  gen->add_option("--positions", gen_pos, "write node positions here");

  // sample
  auto* smp = app.add_subcommand("sample", "Build a sampling plan and draw the operator");
  std::string s_graph, s_pos, s_strategy = "insert-new", s_plan_in, s_plan_out, s_phi, s_signal, s_y;
  int s_m = 0;
  Seed s_seed = 1;
  smp->add_option("--graph", s_graph, "edge list")->required();
  smp->add_option("--positions", s_pos);
  smp->add_option("--m", s_m, "number of measurements");
  smp->add_option("--strategy", s_strategy, "repeat-dominating|insert-new");
  smp->add_option("--seed", s_seed);
  smp->add_option("--plan-in", s_plan_in, "reuse a saved plan instead of building one");
  smp->add_option("--plan", s_plan_out, "write the plan as JSON");
  smp->add_option("--phi", s_phi, "write the operator as CSV");
  smp->add_option("--signal", s_signal, "signal CSV to measure");
  smp->add_option("--y", s_y, "write measurements here");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Recover a signal from measurements");
  std::string r_graph, r_basis = "gft-normalized", r_phi, r_y, r_out, r_solver, r_truth;
  std::vector<int> r_support;
  rec->add_option("--graph", r_graph, "edge list (needed for GFT bases)");
  rec->add_option("--basis", r_basis, "gft-normalized|gft-combinatorial|dct");
  rec->add_option("--phi", r_phi, "operator CSV")->required();
  rec->add_option("--y", r_y, "measurement CSV")->required();
  rec->add_option("--support", r_support, "known support: least squares instead of l1")->delimiter(',');
  rec->add_option("--solver", r_solver, "JSON solver parameters");
  rec->add_option("--truth", r_truth, "true signal CSV, prints the MSE");
  rec->add_option("--out", r_out, "write the recovered signal here");

  // basis
  auto* bas = app.add_subcommand("basis", "Export a sparsity basis and its coherence");
  std::string b_graph, b_basis = "gft-normalized", b_out, b_plan;
  bas->add_option("--graph", b_graph, "edge list")->required();
  bas->add_option("--basis", b_basis);
  bas->add_option("--out", b_out, "basis CSV");
  bas->add_option("--plan", b_plan, "plan JSON; prints the graph-basis coherence");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run an experiment and write a CSV table");
  std::string e_kind, e_config, e_out;
  std::optional<Seed> e_seed;
  std::optional<int> e_trials;
  bool e_serial = false;
  exp->add_option("kind", e_kind, "known-support|unknown-support|condition-table|dominating-curve|wsn|runtime")
      ->required()
      ->check(CLI::IsMember({"known-support", "unknown-support", "condition-table", "dominating-curve", "wsn",
                             "runtime"}));
  exp->add_option("--config", e_config, "JSON config")->required();
  exp->add_option("--seed", e_seed, "override the master seed");
  exp->add_option("--trials", e_trials, "override the trial count");
  exp->add_option("--out", e_out, "CSV path (default: stdout)");
  exp->add_flag("--serial", e_serial, "run trials on one thread");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (!gen_config.empty()) {
        json j = read_json(gen_config);
        ExperimentConfig probe = experiment_config_from_json(json{{"graph", j}, {"sweep", {{"values", {1}}}}});
        spec = probe.graph;
      } else {
        spec.kind = parse_graph_kind(kind);
      }
      spec.validate();
      const Graph g = generate(spec);
      save_edge_list(gen_out, g);
      if (!gen_pos.empty()) {
        if (!g.has_positions()) throw InvalidArgument("this graph kind has no node positions");
        auto out = open_out(gen_pos);
        write_positions(out, g);
      }
      std::cout << "nodes " << g.size() << ", edges " << g.edge_count() << '\n';
    } else if (*smp) {
      const Graph g = load_graph_files(s_graph, s_pos);
      SamplingPlan plan;
      if (!s_plan_in.empty()) {
        plan = plan_from_json(read_json(s_plan_in), g);
      } else {
        if (s_m < 1) throw InvalidArgument("--m is required without --plan-in");
        plan = build_plan(g, s_m, parse_strategy(s_strategy), s_seed);
      }
      const auto op = draw_operator(plan, derive_seed(s_seed, "operator"));
      std::cout << "m " << plan.measurements() << ", p " << plan.hops << ", strategy " << to_string(plan.strategy)
                << ", g_min " << plan.min_multiplicity() << '\n';
      if (!s_plan_out.empty()) {
        auto out = open_out(s_plan_out);
        out << plan_to_json(plan).dump(2) << '\n';
      }
      if (!s_phi.empty()) save_matrix(s_phi, op.phi);
      if (!s_signal.empty()) {
        const Eigen::VectorXd y = measure(op, load_vector(s_signal));
        if (s_y.empty()) throw InvalidArgument("--signal needs --y");
        save_matrix(s_y, y);
      }
    } else if (*rec) {
      SamplingOperator op;
      op.phi = load_matrix(r_phi);
      const Eigen::VectorXd y = load_vector(r_y);
      const BasisKind bk = parse_basis(r_basis);
      OrthoBasis basis;
      if (bk == BasisKind::dct) {
        basis = dct_basis(op.cols());
      } else {
        if (r_graph.empty()) throw InvalidArgument("--graph is required for GFT bases");
        basis = make_basis(load_edge_list(r_graph), bk);
      }
      BasisPursuitParams params;
      if (!r_solver.empty()) {
        ExperimentConfig probe =
            experiment_config_from_json(json{{"solver", read_json(r_solver)}, {"sweep", {{"values", {1}}}}});
        params = probe.solver;
      }
      ReconResult r = r_support.empty() ? bp_l1(op, basis, y, params) : ls_known_support(op, basis, r_support, y);
      if (!r_truth.empty()) {
        assess(r, load_vector(r_truth));
        std::cout << "mse_db " << r.mse_db << (r.perfect ? " (perfect)" : "") << '\n';
      }
      if (r_support.empty())
        std::cout << "iterations " << r.stats.iterations << (r.stats.converged ? "" : " (not converged)") << '\n';
      if (!r_out.empty()) save_matrix(r_out, r.x_star);
    } else if (*bas) {
      const Graph g = load_edge_list(b_graph);
      const OrthoBasis basis = make_basis(g, parse_basis(b_basis));
      if (!b_out.empty()) save_matrix(b_out, basis.u);
      if (!b_plan.empty()) {
        const SamplingPlan plan = plan_from_json(read_json(b_plan), g);
        const auto c = graph_basis_coherence(*plan.aggregation, plan.nodes, basis);
        std::cout << "mu " << c.mu << ", max |U| " << c.max_abs_entry << ", |N*| " << c.max_closed_neighborhood
                  << '\n';
      }
    } else if (*exp) {
      const json raw = read_json(e_config);
      const Exec exec = e_serial ? Exec::serial : Exec::parallel;
      if (e_kind == "known-support" || e_kind == "unknown-support") {
        ExperimentConfig c = experiment_config_from_json(raw);
        if (e_seed) c.seed = *e_seed;
        if (e_trials) c.trials = *e_trials;
        if (!e_out.empty()) c.output = e_out;
        c.validate();
        const auto rows = e_kind == "known-support" ? run_known_support(c, exec) : run_unknown_support(c, exec);
        emit(c.output, to_json(c), c.seed, [&](std::ostream& o) { write_csv(o, rows, to_string(c.sweep)); });
      } else if (e_kind == "condition-table") {
        ConditionConfig c = condition_config_from_json(raw);
        if (e_seed) c.seed = *e_seed;
        if (e_trials) c.trials = *e_trials;
        if (!e_out.empty()) c.output = e_out;
        c.validate();
        const auto rows = condition_table(c, exec);
        emit(c.output, to_json(c), c.seed, [&](std::ostream& o) { write_csv(o, rows); });
      } else if (e_kind == "dominating-curve") {
        DominatingConfig c = dominating_config_from_json(raw);
        if (e_seed) c.graph.seed = *e_seed;
        if (!e_out.empty()) c.output = e_out;
        const auto rows = dominating_curve(load_graph(c.graph, c.graph_file), c.p_max, exec);
        emit(c.output, to_json(c), c.graph.seed, [&](std::ostream& o) { write_csv(o, rows); });
      } else if (e_kind == "wsn") {
        WsnScenario s = wsn_scenario_from_json(raw);
        if (e_seed) s.seed = *e_seed;
        if (e_trials) s.trials = *e_trials;
        if (!e_out.empty()) s.output = e_out;
        s.validate();
        const auto rows = wsn_experiment(s, exec);
        emit(s.output, to_json(s), s.seed, [&](std::ostream& o) { write_csv(o, rows); });
      } else {
        RuntimeConfig c = runtime_config_from_json(raw);
        if (e_seed) c.seed = *e_seed;
        if (e_trials) c.repetitions = *e_trials;
        if (!e_out.empty()) c.output = e_out;
        c.validate();
        const auto rows = runtime_benchmark(c);
        emit(c.output, to_json(c), c.seed, [&](std::ostream& o) { write_csv(o, rows); });
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
