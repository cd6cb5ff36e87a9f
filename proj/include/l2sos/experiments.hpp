#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "l2sos/certificate.hpp"
#include "l2sos/heuristic.hpp"
#include "l2sos/model.hpp"
#include "l2sos/relaxations.hpp"
#include "l2sos/sdp.hpp"

namespace l2sos {

/// "grid WxH", "complete N", "path N", "cycle N" or "file <path>".
SignedGraph parse_graph_spec(const std::string& spec);

/// Text form of a real at 12 significant digits (the CSV dialect).
std::string format_real(double v);

struct ExperimentConfig {
  std::string graph_spec = "grid 3x3";
  std::vector<double> p_grid{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
  int trials = 200;
  std::uint64_t seed = 1;
  std::vector<std::string> methods{"sdp", "sos4"};
  SolverConfig solver{1e-6, 20000};
  /// A primal counts as the rank-1 target when ||Y - target||_F <= recovery_tol * m.
  double recovery_tol = 1e-3;
};

struct SweepRow {
  double p = 0.0;
  std::string method;
  double recovery_rate = 0.0;
  int trials = 0;
  double mean_solve_iters = 0.0;
};

/// Trial t uses seed + t for both the hidden labels and the edge flips, so
/// all methods see the same instances. Solver failures count as misses.
std::vector<SweepRow> sweep_p(const ExperimentConfig& cfg, std::ostream* log = nullptr);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Hidden labels for a trial: first entry +1, the rest drawn from the seed.
Eigen::VectorXd trial_truth(Index n, std::uint64_t seed);

struct FindExampleConfig {
  Index n = 5;
  Index edges = 8;
  Index flips = 1;
  double target_zero_weight = -0.24;
  double target_sos = 0.95;
  double tol = 0.01;
  SolverConfig solver{1e-9, 100000};
};

struct ExampleCandidate {
  Instance instance;
  double zero_weight_connectivity = 0.0;  // mu = 0 certificate, level-2 scale
  double sos_connectivity = 0.0;          // solver certificate, level-2 scale
  SdpStatus sos_status = SdpStatus::MaxIterations;
  bool matches = false;
};

struct FindExampleResult {
  std::vector<ExampleCandidate> candidates;  // one per isomorphism class
  std::optional<std::size_t> first_match;
  std::optional<std::size_t> closest;        // smallest worst-case distance to the targets
};

/// Connected graphs with the given vertex and edge counts, all-ones labels,
/// `flips` corrupted edges; deduplicated up to relabeling of the vertices.
FindExampleResult find_example(const FindExampleConfig& cfg);
void write_find_example_report(std::ostream& out, const FindExampleConfig& cfg, const FindExampleResult& r);

enum class CertifyMethod { Sdp, Sos4 };

struct CertifyReport {
  SdpSolution solution;
  double lambda1 = 0.0;
  double lambda2_restricted = 0.0;
  double connectivity = 0.0;  // level-2 scale for sos4; equal to lambda2_restricted for sdp
  std::optional<ZeroSumReport> zero_sums;
  std::optional<Certificate> certificate;
  RecoveryReport recovery;
  std::optional<SignedBoundReport> bound;  // on the combined graph (or the conjugated input graph)
  bool certified = false;
};

/// Solves, extracts the certificate and evaluates the bound. The verdict is
/// positive iff lambda2_restricted > 1e-6 and the primal is the rank-1 target.
CertifyReport certify(const Instance& inst, CertifyMethod method, const SolverConfig& solver,
                      double recovery_tol = 1e-4);
void write_certify_report(std::ostream& out, const Instance& inst, CertifyMethod method, const CertifyReport& r);

/// Truth-conjugated level-2 observation, U X^(2) U, on the unnormalized scale.
Eigen::MatrixXd conjugated_level2(const Instance& inst);

void write_sweep_c_csv(std::ostream& out, const SweepResult& r);
/// Line plot of lambda2 against c with an optional horizontal reference line.
void write_sweep_c_svg(std::ostream& out, const SweepResult& r, std::optional<double> reference);

}  // namespace l2sos
