#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "l2sos/graph.hpp"

namespace l2sos {

/// A sampled problem: known graph G, hidden labels, edge-flip probability and
/// the resulting observation X (nonzero exactly on the edges of G).
struct Instance {
  SignedGraph graph;
  Eigen::VectorXd truth;        // +-1 entries
  double noise = 0.0;           // p
  Eigen::MatrixXd observation;  // X, entries in {-1, 0, +1}
  std::uint64_t seed = 0;

  Index size() const { return graph.size(); }
};

/// Per-edge generator: the flip of edge (u, v) is a pure function of
/// (seed, u, v), independent of iteration order.
inline constexpr const char* kEdgeRngName = "splitmix64-edge-v1";

std::uint64_t splitmix64(std::uint64_t x);
/// Uniform draw in [0, 1) keyed by (seed, u, v).
double edge_uniform(std::uint64_t seed, Index u, Index v);

/// Flips each edge of `g` independently with probability `p`. `g` must be
/// connected and unweighted; p in (0, 0.5), or exactly 0 for noiseless runs.
Instance sample(const SignedGraph& g, const Eigen::VectorXd& truth, double p, std::uint64_t seed);

/// Builds an instance from an explicit observation (validated against g).
Instance make_instance(const SignedGraph& g, const Eigen::VectorXd& truth, double p,
                       const Eigen::MatrixXd& observation, std::uint64_t seed = 0);

/// y'Xy.
double objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

struct MapEstimate {
  Eigen::VectorXd labels;
  double objective = 0.0;
};

inline constexpr Index kBruteForceLimit = 20;

/// Exhaustive maximizer of y'Xy over +-1 labelings with y_0 = +1. Ties go to
/// the lexicographically smallest labeling, with +1 ordered before -1.
MapEstimate brute_force_map(const Instance& inst);

/// labels == truth or labels == -truth.
bool exact_recovery(const Eigen::VectorXd& labels, const Eigen::VectorXd& truth);

// Instance file: the graph's edge list followed by
//   truth <+-1 list>
//   p <decimal>
//   seed <integer>
//   obs <i> <j> <+-1>     (one per edge)
Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& inst);
Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst);

}  // namespace l2sos
