#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include "l2sos/graph.hpp"

namespace l2sos {

/// Lexicographic bijection between 2-subsets {i, j} of {0..n-1} and
/// 0..C(n,2)-1: {0,1}, {0,2}, ..., {0,n-1}, {1,2}, ..., {n-2,n-1}.
class PairIndex {
 public:
  explicit PairIndex(Index n);

  Index n() const { return n_; }
  Index size() const { return static_cast<Index>(pairs_.size()); }

  /// Index of the unordered pair {i, j}; i != j in either order.
  Index index_of(Index i, Index j) const;
  std::pair<Index, Index> pair_of(Index k) const;

 private:
  Index n_;
  std::vector<std::pair<Index, Index>> pairs_;
};

Index pair_count(Index n);
/// Inverse of pair_count; throws InvalidArgument when `m` is not C(n,2).
Index vertices_for_pair_count(Index m);

struct Level2Vector {
  Index n = 0;
  Eigen::VectorXd entries;  // indexed by PairIndex(n)
};

/// entries{i,j} = v_i * v_j.
Level2Vector level2_vector(const Eigen::VectorXd& v);

/// Recovers the +-1 labeling (first entry +1) whose level-2 vector is `w`.
/// Throws InconsistentLevel2 when an entry is not within `tol` of +-1 or a
/// triple product w{i,j} w{j,k} w{i,k} is negative.
Eigen::VectorXd factor_level2(const Level2Vector& w, double tol = 1e-6);

/// An edge {c1, c2} between two pair-vertices.
struct PairEdge {
  Index a = 0;
  Index b = 0;
};

/// Johnson class of {i, j}: the n-2 pair-vertex edges {i,k}-{j,k}, k ascending.
std::vector<PairEdge> johnson_class(const PairIndex& pairs, Index i, Index j);

/// Kneser class of the 4-set i<j<k<l: {i,j}-{k,l}, {i,k}-{j,l}, {i,l}-{j,k}.
std::array<PairEdge, 3> kneser_class(const PairIndex& pairs, Index i, Index j, Index k, Index l);

/// Pair-indexed weights carrying x(i,j) on every {i,k}-{j,k}, k not in {i,j}.
Eigen::MatrixXd lift_to_pairs(const Eigen::MatrixXd& x);

/// Level-2 graph of g, with g read as unweighted (edge iff nonzero weight).
SignedGraph level2_graph(const SignedGraph& g);

/// Level-2 observation X^(2) of an observation matrix with entries in {-1,0,1}.
SignedGraph level2_observation(const Eigen::MatrixXd& x);

/// J(n,2): pairs adjacent iff they share exactly one element.
SignedGraph johnson_graph(Index n);
/// K(n,2): pairs adjacent iff disjoint.
SignedGraph kneser_graph(Index n);

/// Edge list with pair-index vertex labels, optionally followed by a
/// `pair <index> <i> <j>` line per vertex.
void write_level2_edge_list(std::ostream& out, const SignedGraph& g, bool emit_pair_map);

}  // namespace l2sos
