#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "l2sos/error.hpp"

namespace l2sos {

using Index = Eigen::Index;

struct Edge {
  Index u = 0;
  Index v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph with real, possibly negative, symmetric edge weights.
///
/// The weight matrix is exactly symmetric with an exactly zero diagonal; an
/// edge exists iff its weight is nonzero. Used for input graphs, level-2
/// graphs, Johnson/Kneser weight graphs and the combined certificate graph.
class SignedGraph {
 public:
  SignedGraph() = default;
  /// Edgeless graph on `n` vertices.
  explicit SignedGraph(Index n);
  /// Takes ownership of a weight matrix; throws InvalidArgument unless it is
  /// square, exactly symmetric, finite and has a zero diagonal.
  explicit SignedGraph(Eigen::MatrixXd weights);

  static SignedGraph from_edges(Index n, std::span<const Edge> edges);

  Index size() const { return w_.rows(); }
  const Eigen::MatrixXd& weights() const { return w_; }
  double weight(Index i, Index j) const { return w_(i, j); }
  bool has_edge(Index i, Index j) const { return w_(i, j) != 0.0; }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;
  Index edge_count() const;

  /// Connectivity over nonzero-weight edges (sign ignored).
  bool is_connected() const;
  /// Every nonzero weight equals exactly 1.
  bool is_unweighted() const;

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
    return a.w_ == b.w_;
  }

 private:
  Eigen::MatrixXd w_;
};

struct CutReport {
  std::vector<Index> subset;  // sorted ascending
  double boundary_weight = 0.0;
  Index size = 0;
  std::optional<double> ratio;  // set for Cheeger queries only
};

inline constexpr Index kDefaultExhaustiveLimit = 22;

/// D - W with D_ii = sum_{j != i} W_ij. Rows sum to zero.
Eigen::MatrixXd laplacian(const SignedGraph& g);

double degree(const SignedGraph& g, Index i);
double max_degree(const SignedGraph& g);

/// Sum of weights of edges with exactly one endpoint in `subset`.
double boundary_weight(const SignedGraph& g, std::span<const Index> subset);

/// Exhaustive minimum of w(dT)/|T| over nonempty T with |T| <= floor(n/2).
/// Ties go to the lexicographically smallest subset.
CutReport cheeger_constant(const SignedGraph& g, Index limit = kDefaultExhaustiveLimit);

/// Exhaustive minimum of w(dT) over nonempty proper T.
CutReport min_cut(const SignedGraph& g, Index limit = kDefaultExhaustiveLimit);

/// (H+, H-): the positive-weight and negative-weight edge subgraphs.
std::pair<SignedGraph, SignedGraph> split_signs(const SignedGraph& g);

/// Unweighted graph families. Grid vertices are numbered row-major.
SignedGraph complete_graph(Index n);
SignedGraph path_graph(Index n);
SignedGraph cycle_graph(Index n);
SignedGraph grid_graph(Index width, Index height);

// Edge-list text format:
//   n <count>
//   <i> <j> <weight>     (0-based, i < j)
// '#' starts a comment line. `pair <k> <i> <j>` lines are accepted and
// ignored so that level-2 graphs written with a pair map read back cleanly.
SignedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const SignedGraph& g);

SignedGraph read_edge_list_file(const std::string& path);
void write_edge_list_file(const std::string& path, const SignedGraph& g);

}  // namespace l2sos
