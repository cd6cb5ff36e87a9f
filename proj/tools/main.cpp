// l2sos: instance generation, relaxation solves, certificates and the
// experiment drivers.
//
// Exit codes: 0 success / certified, 1 certification failed,
// 2 parse or usage error, 3 solver hit its iteration cap, 4 other failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "l2sos/experiments.hpp"
#include "l2sos/level2.hpp"

namespace fs = std::filesystem;
using namespace l2sos;

namespace {

constexpr int kExitCertFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitMaxIters = 3;
constexpr int kExitOther = 4;

struct Globals {
  std::uint64_t seed = 1;
  double tol = 1e-7;
  int max_iters = 100000;
  std::string out;
  std::string trace;
  std::string dump_problem;
  std::string emit_weights;
  bool emit_pair_map = false;
  bool svg = false;
};

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  return f;
}

// Writes `text` to <out>/<name> when --out is set, else to stdout.
void emit(const Globals& g, const std::string& name, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  open_out(fs::path(g.out) / name) << text;
  std::cerr << "wrote " << (fs::path(g.out) / name).string() << '\n';
}

SolverConfig solver_config(const Globals& g, std::ofstream* trace) {
  SolverConfig cfg;
  cfg.tolerance = g.tol;
  cfg.max_iterations = g.max_iters;
  cfg.trace = trace;
  return cfg;
}

CertifyMethod parse_method(const std::string& m) {
  if (m == "sdp") return CertifyMethod::Sdp;
  if (m == "sos4") return CertifyMethod::Sos4;
  throw ParseError("unknown method '" + m + "' (expected sdp or sos4)");
}

int cmd_gen(const Globals& g, const std::string& graph_spec, double p, bool ones) {
  const SignedGraph graph = parse_graph_spec(graph_spec);
  const Eigen::VectorXd truth = ones ? Eigen::VectorXd::Ones(graph.size()) : trial_truth(graph.size(), g.seed);
  std::ostringstream s;
  write_instance(s, sample(graph, truth, p, g.seed));
  emit(g, "instance.txt", s.str());
  return 0;
}

int cmd_solve(const Globals& g, const std::string& path, const std::string& relaxation) {
  const Instance inst = read_instance_file(path);
  SdpProblem problem;
  if (relaxation == "sdp") {
    problem = build_sdp(inst);
  } else if (relaxation == "sos4") {
    problem = build_sos4_reduced(inst, true);
  } else if (relaxation == "sos4-diag") {
    problem = build_sos4_reduced(inst, false);
  } else if (relaxation == "sos4-full") {
    problem = build_sos4_full(inst);
  } else {
    throw ParseError("unknown relaxation '" + relaxation + "'");
  }
  if (!g.dump_problem.empty()) {
    auto f = open_out(g.dump_problem);
    write_problem(f, problem);
  }
  std::optional<std::ofstream> trace;
  if (!g.trace.empty()) trace = open_out(g.trace);
  const SdpSolution sol = solve(problem, solver_config(g, trace ? &*trace : nullptr));
  const KktReport kkt = verify_kkt(problem, sol, g.tol);
  std::cout << "relaxation: " << relaxation << '\n'
            << "dimension: " << problem.dimension << '\n'
            << "constraints: " << problem.constraint_count() << '\n'
            << "status: " << to_string(sol.status) << '\n'
            << "iterations: " << sol.iterations << '\n'
            << "primal_objective: " << format_real(sol.primal_objective) << '\n'
            << "dual_objective: " << format_real(sol.dual_objective) << '\n'
            << "kkt: primal=" << format_real(kkt.primal_feasibility) << " primal_psd=" << format_real(kkt.primal_psd)
            << " dual_psd=" << format_real(kkt.dual_psd) << " stationarity=" << format_real(kkt.stationarity)
            << " complementarity=" << format_real(kkt.complementarity) << " gap=" << format_real(kkt.gap) << '\n';
  if (sol.status == SdpStatus::Optimal && relaxation != "sos4-full") {
    const RecoveryReport r = check_recovery(sol, inst, relaxation == "sdp" ? RelaxationLevel::Sdp : RelaxationLevel::Sos4,
                                            1e-4);
    std::cout << "distance_to_rank1_target: " << format_real(r.distance) << '\n'
              << "exact: " << (r.exact ? "yes" : "no") << '\n';
  }
  return sol.status == SdpStatus::MaxIterations ? kExitMaxIters : 0;
}

int cmd_certify(const Globals& g, const std::string& path, const std::string& method_name) {
  const Instance inst = read_instance_file(path);
  const CertifyMethod method = parse_method(method_name);
  std::optional<std::ofstream> trace;
  if (!g.trace.empty()) trace = open_out(g.trace);
  const CertifyReport r = certify(inst, method, solver_config(g, trace ? &*trace : nullptr));
  std::ostringstream s;
  write_certify_report(s, inst, method, r);
  emit(g, "certify.txt", s.str());
  if (!g.emit_weights.empty() && r.certificate) {
    const fs::path dir(g.emit_weights);
    fs::create_directories(dir);
    auto fj = open_out(dir / "w_johnson.txt");
    write_level2_edge_list(fj, r.certificate->w_johnson, g.emit_pair_map);
    auto fk = open_out(dir / "w_kneser.txt");
    write_level2_edge_list(fk, r.certificate->w_kneser, g.emit_pair_map);
  }
  if (r.solution.status == SdpStatus::MaxIterations) return kExitMaxIters;
  return r.certified ? 0 : kExitCertFailed;
}

int cmd_sweep_p(const Globals& g, ExperimentConfig cfg) {
  cfg.seed = g.seed;
  cfg.solver.max_iterations = g.max_iters;
  std::ostringstream s;
  write_sweep_csv(s, sweep_p(cfg, &std::cerr));
  emit(g, "sweep_p.csv", s.str());
  return 0;
}

int cmd_sweep_c(const Globals& g, const std::string& path, double c_min, double c_max, Index steps) {
  const Instance inst = read_instance_file(path);
  const SweepResult r = c_sweep(conjugated_level2(inst), c_min, c_max, steps);
  std::ostringstream csv;
  write_sweep_c_csv(csv, r);
  emit(g, "sweep_c.csv", csv.str());
  std::cerr << "best_c=" << format_real(r.best_c) << " best_lambda2=" << format_real(r.best_lambda2) << '\n';
  if (g.svg) {
    std::optional<double> reference;
    SolverConfig cfg = solver_config(g, nullptr);
    const CertifyReport cert = certify(inst, CertifyMethod::Sos4, cfg);
    if (cert.certificate) reference = cert.connectivity;
    std::ostringstream svg;
    write_sweep_c_svg(svg, r, reference);
    emit(g, "sweep_c.svg", svg.str());
  }
  return 0;
}

int cmd_find_example(const Globals& g, FindExampleConfig cfg) {
  const FindExampleResult r = find_example(cfg);
  std::ostringstream s;
  write_find_example_report(s, cfg, r);
  emit(g, "find_example.csv", s.str());
  const auto pick = r.first_match ? r.first_match : r.closest;
  if (pick) {
    std::ostringstream inst;
    write_instance(inst, r.candidates[*pick].instance);
    emit(g, r.first_match ? "example.txt" : "closest.txt", inst.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree-2 and degree-4 relaxations for exact label recovery, with dual certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base seed");
  app.add_option("--tol", g.tol, "Solver tolerance");
  app.add_option("--max-iters", g.max_iters, "Solver iteration cap");
  app.add_option("--out", g.out, "Output directory (default: stdout)");
  app.add_option("--trace", g.trace, "Iteration trace CSV path");
  app.add_option("--dump-problem", g.dump_problem, "Write the constraint system to this path");
  app.add_option("--emit-weights", g.emit_weights, "Directory for Johnson/Kneser weight edge lists");
  app.add_flag("--emit-pair-map", g.emit_pair_map, "Append pair-index map lines to level-2 edge lists");
  app.add_flag("--svg", g.svg, "Also write an SVG plot");

  std::string graph_spec = "grid 3x3";
  double p = 0.1;
  bool ones = false;
  auto* gen = app.add_subcommand("gen", "Sample an instance");
  gen->add_option("--graph", graph_spec, "grid WxH | complete N | path N | cycle N | file PATH");
  gen->add_option("--p", p, "Edge flip probability");
  gen->add_flag("--ones", ones, "All-ones hidden labels");

  std::string instance_path, relaxation = "sos4", method = "sos4";
  auto* solve_cmd = app.add_subcommand("solve", "Solve one relaxation of an instance");
  solve_cmd->add_option("instance", instance_path)->required();
  solve_cmd->add_option("--relaxation", relaxation, "sdp | sos4 | sos4-diag | sos4-full");

  auto* certify_cmd = app.add_subcommand("certify", "Solve and analyze the dual certificate");
  certify_cmd->add_option("instance", instance_path)->required();
  certify_cmd->add_option("--method", method, "sdp | sos4");

  ExperimentConfig sweep;
  auto* sweep_p_cmd = app.add_subcommand("sweep-p", "Recovery rate against edge noise");
  sweep_p_cmd->add_option("--graph", sweep.graph_spec);
  sweep_p_cmd->add_option("--p-grid", sweep.p_grid)->delimiter(',');
  sweep_p_cmd->add_option("--trials", sweep.trials);
  sweep_p_cmd->add_option("--methods", sweep.methods)->delimiter(',');
  sweep_p_cmd->add_option("--sweep-tol", sweep.solver.tolerance, "Solver tolerance for the sweep");
  sweep_p_cmd->add_option("--recovery-tol", sweep.recovery_tol);

  double c_min = 0.0, c_max = 0.6;
  Index steps = 61;
  auto* sweep_c_cmd = app.add_subcommand("sweep-c", "Connectivity of the heuristic Kneser weights against c");
  sweep_c_cmd->add_option("instance", instance_path)->required();
  sweep_c_cmd->add_option("--c-min", c_min);
  sweep_c_cmd->add_option("--c-max", c_max);
  sweep_c_cmd->add_option("--steps", steps);

  FindExampleConfig find;
  auto* find_cmd = app.add_subcommand("find-example", "Search small instances where degree 4 succeeds and degree 2 fails");
  find_cmd->add_option("--n", find.n);
  find_cmd->add_option("--edges", find.edges);
  find_cmd->add_option("--flips", find.flips);
  find_cmd->add_option("--target-sdp", find.target_zero_weight);
  find_cmd->add_option("--target-sos", find.target_sos);
  find_cmd->add_option("--match-tol", find.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*gen) return cmd_gen(g, graph_spec, p, ones);
    if (*solve_cmd) return cmd_solve(g, instance_path, relaxation);
    if (*certify_cmd) return cmd_certify(g, instance_path, method);
    if (*sweep_p_cmd) return cmd_sweep_p(g, sweep);
    if (*sweep_c_cmd) return cmd_sweep_c(g, instance_path, c_min, c_max, steps);
    if (*find_cmd) return cmd_find_example(g, find);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}
