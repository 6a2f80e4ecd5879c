// Command-line front end for ground-state entanglement analysis of
// interacting bosonic graphs.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bosegraph/graph.hpp"
#include "bosegraph/hamiltonian.hpp"
#include "bosegraph/observables.hpp"
#include "bosegraph/solver.hpp"
#include "bosegraph/sweep.hpp"

using json = nlohmann::json;
using namespace bosegraph;

namespace {

struct CommonOpts {
  std::string graph_source = "dimer";
  int particles = -1;  // -1 means "default to L"
  double epsilon = 1.0;
  double tau_min = 0.0;
  double tau_max = 20.0;
  int steps = 401;
  std::string solver = "auto";
  double tol = 1e-10;
  std::string out;
  std::string format = "csv";
};

RootedGraph resolve_graph(const std::string& source) {
  if (source == "dimer") return complete_graph(2);
  const auto colon = source.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--graph", "expected catalog:<id>, file:<path>, "
                               "complete:<L>, pendant:<L> or dimer");
  const std::string kind = source.substr(0, colon);
  const std::string arg = source.substr(colon + 1);
  if (kind == "catalog") return catalog_graph(std::stoi(arg));
  if (kind == "complete") return complete_graph(std::stoi(arg));
  if (kind == "pendant") return pendant_complete(std::stoi(arg));
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open graph file: " + arg);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str(), arg);
  }
  throw CLI::ValidationError("--graph", "unknown graph source kind '" + kind + "'");
}

SolverOptions solver_options(const CommonOpts& o) {
  SolverOptions opts;
  opts.tolerance = o.tol;
  if (o.solver == "dense") opts.dense_threshold = 20000;
  if (o.solver == "lanczos") opts.dense_threshold = 0;
  return opts;
}

int particles_or_default(const CommonOpts& o, const RootedGraph& g) {
  return o.particles > 0 ? o.particles : g.num_vertices;
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_grid = true) {
  cmd->add_option("--graph", o.graph_source,
                  "catalog:<id> | file:<path> | complete:<L> | pendant:<L> | dimer");
  cmd->add_option("--particles", o.particles, "particle number N (default: L)");
  cmd->add_option("--epsilon", o.epsilon, "self-interaction strength")
      ->check(CLI::NonNegativeNumber);
  if (with_grid) {
    cmd->add_option("--tau-min", o.tau_min)->check(CLI::NonNegativeNumber);
    cmd->add_option("--tau-max", o.tau_max)->check(CLI::NonNegativeNumber);
    cmd->add_option("--steps", o.steps)->check(CLI::Range(2, 1000000));
  }
  cmd->add_option("--solver", o.solver)
      ->check(CLI::IsMember({"auto", "dense", "lanczos"}));
  cmd->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output path (default: stdout)");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string sweep_csv(const SweepResult& r) {
  const int num_modes = static_cast<int>(r.points.front().mean.size());
  std::string out = "tau,energy,entanglement";
  for (int v = 0; v < num_modes; ++v) out += ",mean_" + std::to_string(v);
  for (int v = 0; v < num_modes; ++v) out += ",var_" + std::to_string(v);
  out += ",dE_dtau,dvar0_dtau,degenerate\n";
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& p = r.points[i];
    out += fmt(p.tau) + "," + fmt(p.energy) + "," + fmt(p.entanglement);
    for (double m : p.mean) out += "," + fmt(m);
    for (double v : p.variance) out += "," + fmt(v);
    out += "," + fmt(r.d_entanglement[i]) + "," + fmt(r.d_variance0[i]);
    out += p.degenerate ? ",1\n" : ",0\n";
  }
  return out;
}

json sweep_json(const SweepResult& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& p = r.points[i];
    rows.push_back({{"tau", p.tau},
                    {"energy", p.energy},
                    {"entanglement", p.entanglement},
                    {"mean", p.mean},
                    {"variance", p.variance},
                    {"dE_dtau", r.d_entanglement[i]},
                    {"dvar0_dtau", r.d_variance0[i]},
                    {"degenerate", p.degenerate}});
  }
  return {{"graph", r.graph_name},
          {"particles", r.num_particles},
          {"epsilon", r.epsilon},
          {"rows", rows}};
}

// Everything is computed before the output file is opened, so a failure
// never leaves a partial file behind.
void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << payload;
}

json spectrum_json(const SpectrumReport& s) {
  return {{"eigenvalues", s.eigenvalues},
          {"lambda_max", s.lambda_max},
          {"one_particle_ground_energy", s.one_particle_ground_energy}};
}

json ordering_json(const OrderingReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"name", e.name},
                       {"entanglement", e.entanglement},
                       {"lambda_full", e.lambda_full},
                       {"lambda_sub", e.lambda_sub}});
  return {{"tau", r.tau},
          {"entries", entries},
          {"rank_by_entanglement", r.rank_by_entanglement},
          {"rank_by_lambda_full", r.rank_by_lambda_full},
          {"rank_by_lambda_sub", r.rank_by_lambda_sub},
          {"concordance_full", r.concordance_full},
          {"concordance_sub", r.concordance_sub}};
}

int run_dimer_check(double epsilon, double tol) {
  const auto g = complete_graph(2);
  bool all_pass = true;
  auto report = [&](const std::string& name, bool ok, double detail) {
    std::printf("%s %s (max deviation %.3e)\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail);
    all_pass = all_pass && ok;
  };

  // analytic closed form vs the numerical pipeline over 50 tau points
  double max_dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double tau = 20.0 * i / 49.0;
    const auto analytic = dimer_analytic(tau, epsilon);
    SectorHamiltonian h(g, 2, Couplings(tau, epsilon));
    const auto gs = ground_state(h);
    const auto num = entanglement(mode_marginal(gs, h.sector(), 0), 2);
    max_dev = std::max(max_dev,
                       std::abs(num.normalized - analytic.entanglement.normalized));
    const auto om = occupation_moments(gs, h.sector(), 0);
    max_dev = std::max(max_dev, std::abs(om.variance - analytic.variance));
  }
  report("analytic-vs-numeric entanglement and variance (50 tau)", max_dev <= tol,
         max_dev);

  // variance-derivative peak at tau = epsilon / (2 sqrt(2))
  const auto series = sweep(g, 2, epsilon, TauGrid(0.0, 2.0 * epsilon, 801));
  const auto peak = find_derivative_peak(series, SweepSeries::variance, 0);
  const double expected = epsilon / (2.0 * std::sqrt(2.0));
  const double dev = std::abs(peak.tau_peak - expected);
  report("variance-derivative peak at eps/(2*sqrt(2))", dev <= 1e-3, dev);
  std::printf("peak tau = %.6f (expected %.6f)\n", peak.tau_peak, expected);

  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state entanglement of interacting bosonic graphs"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* cmd_catalog = app.add_subcommand("catalog", "list the 4-vertex rooted graphs");

  auto* cmd_sweep = app.add_subcommand("sweep", "tau sweep with observables");
  add_common_flags(cmd_sweep, o);
  cmd_sweep->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* cmd_argmax =
      app.add_subcommand("argmax", "locate the entanglement maximum over tau");
  add_common_flags(cmd_argmax, o);
  double argmax_tol = 1e-3;
  cmd_argmax->add_option("--search-tol", argmax_tol)->check(CLI::PositiveNumber);

  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "adjacency spectra of graph and sub-graph");
  add_common_flags(cmd_spectrum, o, false);

  auto* cmd_order = app.add_subcommand("order", "entanglement ordering report");
  std::vector<int> order_ids = {10, 11, 12, 13};
  std::vector<double> order_taus = {0.1};
  add_common_flags(cmd_order, o, false);
  cmd_order->add_option("--ids", order_ids, "catalog ids")->check(CLI::Range(3, 13));
  cmd_order->add_option("--tau", order_taus, "tau values");

  auto* cmd_dimer = app.add_subcommand("dimer-check", "analytic-vs-numeric dimer suite");
  double dimer_eps = 1.0, dimer_tol = 1e-9;
  cmd_dimer->add_option("--epsilon", dimer_eps)->check(CLI::PositiveNumber);
  cmd_dimer->add_option("--tol", dimer_tol)->check(CLI::PositiveNumber);

  auto* cmd_cscan =
      app.add_subcommand("complete-scan", "sweep complete graphs K_L at N = L");
  std::vector<int> scan_sizes = {3, 4, 5, 6, 7};
  std::string out_prefix = "complete";
  add_common_flags(cmd_cscan, o);
  cmd_cscan->add_option("--sizes", scan_sizes, "values of L = N")->check(CLI::Range(2, 12));
  cmd_cscan->add_option("--out-prefix", out_prefix, "CSV path prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_catalog->parsed()) {
      for (int id = 3; id <= 13; ++id) {
        const auto g = catalog_graph(id);
        std::printf("%s: L=%d edges=", g.name.c_str(), g.num_vertices);
        for (std::size_t e = 0; e < g.edges.size(); ++e)
          std::printf("%s(%d,%d)", e ? " " : "", g.edges[e].first, g.edges[e].second);
        std::printf("\n");
      }
    } else if (cmd_sweep->parsed()) {
      const auto g = resolve_graph(o.graph_source);
      const auto result = sweep(g, particles_or_default(o, g), o.epsilon,
                                TauGrid(o.tau_min, o.tau_max, o.steps),
                                solver_options(o));
      emit(o.out, o.format == "json" ? sweep_json(result).dump(2) + "\n"
                                     : sweep_csv(result));
    } else if (cmd_argmax->parsed()) {
      const auto g = resolve_graph(o.graph_source);
      const auto mx =
          find_entanglement_max(g, particles_or_default(o, g), o.epsilon, o.tau_min,
                                o.tau_max, argmax_tol, solver_options(o));
      const json j = {{"tau_star", mx.tau_star},
                      {"E_star", mx.e_star},
                      {"interior", mx.interior}};
      emit(o.out, j.dump(2) + "\n");
    } else if (cmd_spectrum->parsed()) {
      const auto g = resolve_graph(o.graph_source);
      const json j = {{"graph", spectrum_json(adjacency_spectrum(g))},
                      {"subgraph",
                       spectrum_json(adjacency_spectrum(subgraph_without_root(g)))}};
      emit(o.out, j.dump(2) + "\n");
    } else if (cmd_order->parsed()) {
      const int n = o.particles > 0 ? o.particles : 4;
      json reports = json::array();
      for (double tau : order_taus)
        reports.push_back(
            ordering_json(ordering_report(order_ids, n, o.epsilon, tau,
                                          solver_options(o))));
      emit(o.out, reports.dump(2) + "\n");
    } else if (cmd_dimer->parsed()) {
      return run_dimer_check(dimer_eps, dimer_tol);
    } else if (cmd_cscan->parsed()) {
      // Fig.-style defaults for the complete-graph family
      if (cmd_cscan->get_option("--tau-max")->count() == 0) o.tau_max = 1.0;
      if (cmd_cscan->get_option("--steps")->count() == 0) o.steps = 201;
      for (int size : scan_sizes) {
        const auto g = complete_graph(size);
        const auto result = sweep(g, o.particles > 0 ? o.particles : size, o.epsilon,
                                  TauGrid(o.tau_min, o.tau_max, o.steps),
                                  solver_options(o));
        const std::string path = out_prefix + "_L" + std::to_string(size) + ".csv";
        emit(path, sweep_csv(result));
        std::printf("wrote %s\n", path.c_str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
