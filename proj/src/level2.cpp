#include "l2sos/level2.hpp"

#include <cmath>
#include <ostream>

namespace l2sos {

PairIndex::PairIndex(Index n) : n_(n) {
  if (n < 2) throw InvalidArgument("PairIndex: need n >= 2");
  pairs_.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
}

Index PairIndex::index_of(Index i, Index j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw InvalidArgument("PairIndex: invalid pair");
  if (i > j) std::swap(i, j);
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

std::pair<Index, Index> PairIndex::pair_of(Index k) const {
  if (k < 0 || k >= size()) throw InvalidArgument("PairIndex: index out of range");
  return pairs_[static_cast<std::size_t>(k)];
}

Index pair_count(Index n) { return n * (n - 1) / 2; }

Index vertices_for_pair_count(Index m) {
  const Index n = static_cast<Index>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m))) / 2.0));
  if (n < 2 || pair_count(n) != m)
    throw InvalidArgument("dimension " + std::to_string(m) + " is not a triangular number C(n,2)");
  return n;
}

Level2Vector level2_vector(const Eigen::VectorXd& v) {
  const Index n = v.size();
  if (n < 2) throw InvalidArgument("level2_vector: need n >= 2");
  Level2Vector out{n, Eigen::VectorXd(pair_count(n))};
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.entries(k++) = v(i) * v(j);
  return out;
}

Eigen::VectorXd factor_level2(const Level2Vector& w, double tol) {
  const PairIndex pairs(w.n);
  if (w.entries.size() != pairs.size()) throw InvalidArgument("factor_level2: length is not C(n,2)");
  for (Index k = 0; k < pairs.size(); ++k)
    if (std::abs(std::abs(w.entries(k)) - 1.0) > tol)
      throw InconsistentLevel2("factor_level2: entry " + std::to_string(k) + " is not +-1");
  const auto at = [&](Index i, Index j) { return w.entries(pairs.index_of(i, j)); };
  for (Index i = 0; i < w.n; ++i)
    for (Index j = i + 1; j < w.n; ++j)
      for (Index k = j + 1; k < w.n; ++k)
        if (at(i, j) * at(j, k) * at(i, k) < 0.0)
          throw InconsistentLevel2("factor_level2: negative triple product on {" + std::to_string(i) + "," +
                                   std::to_string(j) + "," + std::to_string(k) + "}");
  Eigen::VectorXd y(w.n);
  y(0) = 1.0;
  for (Index j = 1; j < w.n; ++j) y(j) = at(0, j) > 0.0 ? 1.0 : -1.0;
  return y;
}

std::vector<PairEdge> johnson_class(const PairIndex& pairs, Index i, Index j) {
  std::vector<PairEdge> out;
  for (Index k = 0; k < pairs.n(); ++k) {
    if (k == i || k == j) continue;
    out.push_back({pairs.index_of(i, k), pairs.index_of(j, k)});
  }
  return out;
}

std::array<PairEdge, 3> kneser_class(const PairIndex& pairs, Index i, Index j, Index k, Index l) {
  return {PairEdge{pairs.index_of(i, j), pairs.index_of(k, l)},
          PairEdge{pairs.index_of(i, k), pairs.index_of(j, l)},
          PairEdge{pairs.index_of(i, l), pairs.index_of(j, k)}};
}

Eigen::MatrixXd lift_to_pairs(const Eigen::MatrixXd& x) {
  const Index n = x.rows();
  if (x.cols() != n) throw InvalidArgument("lift_to_pairs: matrix must be square");
  if (n < 3) throw InvalidArgument("lift_to_pairs: need n >= 3");
  const PairIndex pairs(n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(pairs.size(), pairs.size());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (x(i, j) == 0.0) continue;
      for (const PairEdge& e : johnson_class(pairs, i, j)) {
        out(e.a, e.b) = x(i, j);
        out(e.b, e.a) = x(i, j);
      }
    }
  return out;
}

SignedGraph level2_graph(const SignedGraph& g) {
  if (g.size() < 3) throw InvalidArgument("level2_graph: need n >= 3");
  Eigen::MatrixXd adjacency = (g.weights().array() != 0.0).cast<double>();
  return SignedGraph(lift_to_pairs(adjacency));
}

SignedGraph level2_observation(const Eigen::MatrixXd& x) {
  if (x.rows() != x.cols()) throw InvalidArgument("level2_observation: matrix must be square");
  for (Index i = 0; i < x.rows(); ++i) {
    if (x(i, i) != 0.0) throw InvalidArgument("level2_observation: nonzero diagonal");
    for (Index j = 0; j < x.cols(); ++j) {
      if (x(i, j) != x(j, i)) throw InvalidArgument("level2_observation: matrix not symmetric");
      if (x(i, j) != 0.0 && x(i, j) != 1.0 && x(i, j) != -1.0)
        throw InvalidArgument("level2_observation: entries must be in {-1, 0, +1}");
    }
  }
  return SignedGraph(lift_to_pairs(x));
}

SignedGraph johnson_graph(Index n) {
  if (n < 3) throw InvalidArgument("johnson_graph: need n >= 3");
  return SignedGraph(lift_to_pairs(Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n)));
}

SignedGraph kneser_graph(Index n) {
  if (n < 4) throw InvalidArgument("kneser_graph: need n >= 4");
  const PairIndex pairs(n);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(pairs.size(), pairs.size());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k)
        for (Index l = k + 1; l < n; ++l)
          for (const PairEdge& e : kneser_class(pairs, i, j, k, l)) {
            w(e.a, e.b) = 1.0;
            w(e.b, e.a) = 1.0;
          }
  return SignedGraph(std::move(w));
}

void write_level2_edge_list(std::ostream& out, const SignedGraph& g, bool emit_pair_map) {
  write_edge_list(out, g);
  if (!emit_pair_map) return;
  const PairIndex pairs(vertices_for_pair_count(g.size()));
  for (Index k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs.pair_of(k);
    out << "pair " << k << ' ' << i << ' ' << j << '\n';
  }
}

}  // namespace l2sos
