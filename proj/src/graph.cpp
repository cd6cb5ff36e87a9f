#include "l2sos/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace l2sos {

SignedGraph::SignedGraph(Index n) : w_(Eigen::MatrixXd::Zero(n, n)) {
  if (n < 0) throw InvalidArgument("SignedGraph: negative vertex count");
}

SignedGraph::SignedGraph(Eigen::MatrixXd weights) : w_(std::move(weights)) {
  if (w_.rows() != w_.cols()) throw InvalidArgument("SignedGraph: weight matrix must be square");
  if (!w_.allFinite()) throw InvalidArgument("SignedGraph: non-finite weight");
  for (Index i = 0; i < w_.rows(); ++i) {
    if (w_(i, i) != 0.0) throw InvalidArgument("SignedGraph: nonzero diagonal");
    for (Index j = i + 1; j < w_.cols(); ++j)
      if (w_(i, j) != w_(j, i)) throw InvalidArgument("SignedGraph: weight matrix not symmetric");
  }
}

SignedGraph SignedGraph::from_edges(Index n, std::span<const Edge> edges) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw InvalidArgument("SignedGraph: edge endpoint out of range");
    if (e.u == e.v) throw InvalidArgument("SignedGraph: self loop");
    w(e.u, e.v) = e.weight;
    w(e.v, e.u) = e.weight;
  }
  return SignedGraph(std::move(w));
}

std::vector<Edge> SignedGraph::edges() const {
  std::vector<Edge> out;
  for (Index i = 0; i < size(); ++i)
    for (Index j = i + 1; j < size(); ++j)
      if (w_(i, j) != 0.0) out.push_back({i, j, w_(i, j)});
  return out;
}

Index SignedGraph::edge_count() const {
  Index count = 0;
  for (Index i = 0; i < size(); ++i)
    for (Index j = i + 1; j < size(); ++j)
      if (w_(i, j) != 0.0) ++count;
  return count;
}

bool SignedGraph::is_connected() const {
  const Index n = size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index reached = 1;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index v = 0; v < n; ++v) {
      if (!seen[v] && w_(u, v) != 0.0) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

bool SignedGraph::is_unweighted() const {
  return (w_.array() == 0.0 || w_.array() == 1.0).all();
}

Eigen::MatrixXd laplacian(const SignedGraph& g) {
  Eigen::MatrixXd l = -g.weights();
  for (Index i = 0; i < g.size(); ++i) l(i, i) = degree(g, i);
  return l;
}

double degree(const SignedGraph& g, Index i) {
  if (i < 0 || i >= g.size()) throw InvalidArgument("degree: vertex index out of range");
  // The diagonal is zero, so the full row sum is the degree.
  return g.weights().row(i).sum();
}

double max_degree(const SignedGraph& g) {
  if (g.size() == 0) throw InvalidArgument("max_degree: empty graph");
  return g.weights().rowwise().sum().maxCoeff();
}

double boundary_weight(const SignedGraph& g, std::span<const Index> subset) {
  std::vector<char> inside(g.size(), 0);
  for (Index v : subset) {
    if (v < 0 || v >= g.size()) throw InvalidArgument("boundary_weight: vertex out of range");
    inside[v] = 1;
  }
  double total = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    if (!inside[i]) continue;
    for (Index j = 0; j < g.size(); ++j)
      if (!inside[j]) total += g.weight(i, j);
  }
  return total;
}

namespace {

using Mask = std::uint32_t;

std::vector<Index> mask_to_subset(Mask mask) {
  std::vector<Index> out;
  for (Index v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1u) out.push_back(v);
  return out;
}

// Lexicographic order on the sorted index sequences of two subsets.
bool lex_less(Mask a, Mask b) {
  while (a != 0 && b != 0) {
    const int ia = std::countr_zero(a);
    const int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b)));
}

void check_limit(const SignedGraph& g, Index limit, const char* who) {
  if (g.size() > limit) {
    std::ostringstream msg;
    msg << who << ": graph has " << g.size() << " vertices, exhaustive limit is " << limit;
    throw LimitExceeded(msg.str());
  }
  if (limit > 30) throw InvalidArgument(std::string(who) + ": exhaustive limit above 30 is not supported");
}

// Visits every subset in Gray-code order and reports (mask, boundary weight)
// maintained incrementally. Adding v changes w(dT) by deg(v) - 2 * w(v, T).
template <typename Visit>
void scan_subsets(const SignedGraph& g, Index n_free, Visit&& visit) {
  const Index n = g.size();
  const Eigen::MatrixXd& w = g.weights();
  Eigen::VectorXd deg = w.rowwise().sum();
  Eigen::VectorXd into_t = Eigen::VectorXd::Zero(n);  // w(v, T) for every v
  Mask mask = 0;
  double boundary = 0.0;
  const std::uint64_t total = std::uint64_t{1} << n_free;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int v = std::countr_zero(k);
    const Mask bit = Mask{1} << v;
    if (mask & bit) {
      mask &= ~bit;
      boundary -= deg(v) - 2.0 * (into_t(v));
      into_t -= w.col(v);
    } else {
      boundary += deg(v) - 2.0 * into_t(v);
      mask |= bit;
      into_t += w.col(v);
    }
    visit(mask, boundary);
  }
}

}  // namespace

CutReport cheeger_constant(const SignedGraph& g, Index limit) {
  check_limit(g, limit, "cheeger_constant");
  const Index n = g.size();
  if (n < 2) throw InvalidArgument("cheeger_constant: need at least 2 vertices");
  const Index max_size = n / 2;
  Mask best = 0;
  double best_ratio = 0.0;
  scan_subsets(g, n, [&](Mask mask, double boundary) {
    const int size = std::popcount(mask);
    if (size > max_size) return;
    const double ratio = boundary / size;
    if (best == 0 || ratio < best_ratio - 1e-12 * (1.0 + std::abs(best_ratio)) ||
        (nearly_equal(ratio, best_ratio) && lex_less(mask, best))) {
      best = mask;
      best_ratio = ratio;
    }
  });
  CutReport report;
  report.subset = mask_to_subset(best);
  report.size = static_cast<Index>(report.subset.size());
  report.boundary_weight = boundary_weight(g, report.subset);
  report.ratio = report.boundary_weight / static_cast<double>(report.size);
  return report;
}

CutReport min_cut(const SignedGraph& g, Index limit) {
  check_limit(g, limit, "min_cut");
  const Index n = g.size();
  if (n < 2) throw InvalidArgument("min_cut: need at least 2 vertices");
  // T and its complement cut the same edges; the lexicographically smaller
  // of the two always contains vertex 0, so scan subsets of {1..n-1} and
  // add vertex 0 (leaving out the full set).
  Eigen::MatrixXd rest = g.weights().bottomRightCorner(n - 1, n - 1);
  Eigen::VectorXd to_zero = g.weights().col(0).tail(n - 1);
  const double deg0 = to_zero.sum();

  Mask best = 1;  // {0}
  double best_cut = deg0;
  const Mask full_rest = (n - 1 >= 32) ? ~Mask{0} : ((Mask{1} << (n - 1)) - 1);
  SignedGraph rest_graph(std::move(rest));
  scan_subsets(rest_graph, n - 1, [&](Mask mask, double boundary_rest) {
    if (mask == full_rest) return;
    // Cut of T = {0} u (mask shifted by one) in g.
    double zero_out = 0.0;
    for (Mask m = ~mask & full_rest; m != 0; m &= m - 1) zero_out += to_zero(std::countr_zero(m));
    const double cut = boundary_rest + zero_out;
    const Mask full_mask = 1u | (mask << 1);
    if (cut < best_cut - 1e-12 * (1.0 + std::abs(best_cut)) ||
        (nearly_equal(cut, best_cut) && lex_less(full_mask, best))) {
      best = full_mask;
      best_cut = cut;
    }
  });
  CutReport report;
  report.subset = mask_to_subset(best);
  report.size = static_cast<Index>(report.subset.size());
  report.boundary_weight = boundary_weight(g, report.subset);
  return report;
}

std::pair<SignedGraph, SignedGraph> split_signs(const SignedGraph& g) {
  Eigen::MatrixXd pos = g.weights().cwiseMax(0.0);
  Eigen::MatrixXd neg = g.weights().cwiseMin(0.0);
  return {SignedGraph(std::move(pos)), SignedGraph(std::move(neg))};
}

SignedGraph complete_graph(Index n) {
  if (n < 1) throw InvalidArgument("complete_graph: need n >= 1");
  return SignedGraph(Eigen::MatrixXd(Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n)));
}

SignedGraph path_graph(Index n) {
  if (n < 1) throw InvalidArgument("path_graph: need n >= 1");
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return SignedGraph::from_edges(n, edges);
}

SignedGraph cycle_graph(Index n) {
  if (n < 3) throw InvalidArgument("cycle_graph: need n >= 3");
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  edges.push_back({0, n - 1, 1.0});
  return SignedGraph::from_edges(n, edges);
}

SignedGraph grid_graph(Index width, Index height) {
  if (width < 1 || height < 1) throw InvalidArgument("grid_graph: dimensions must be positive");
  std::vector<Edge> edges;
  for (Index r = 0; r < height; ++r)
    for (Index c = 0; c < width; ++c) {
      const Index v = r * width + c;
      if (c + 1 < width) edges.push_back({v, v + 1, 1.0});
      if (r + 1 < height) edges.push_back({v, v + width, 1.0});
    }
  return SignedGraph::from_edges(width * height, edges);
}

SignedGraph read_edge_list(std::istream& in) {
  std::string line;
  Index n = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "n") {
      if (n >= 0) throw ParseError("edge list line " + std::to_string(line_no) + ": duplicate 'n' header");
      if (!(ls >> n) || n < 0) throw ParseError("edge list line " + std::to_string(line_no) + ": bad vertex count");
      continue;
    }
    if (head == "pair") continue;
    if (n < 0) throw ParseError("edge list: missing 'n <vertex-count>' header");
    Edge e;
    std::istringstream hs(head);
    if (!(hs >> e.u) || !(ls >> e.v >> e.weight))
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected '<i> <j> <weight>'");
    if (e.u >= e.v || e.v >= n || e.u < 0)
      throw ParseError("edge list line " + std::to_string(line_no) + ": need 0 <= i < j < n");
    edges.push_back(e);
  }
  if (n < 0) throw ParseError("edge list: missing 'n <vertex-count>' header");
  return SignedGraph::from_edges(n, edges);
}

void write_edge_list(std::ostream& out, const SignedGraph& g) {
  out << "n " << g.size() << '\n';
  char buf[64];
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.weight);
    out << e.u << ' ' << e.v << ' ' << buf << '\n';
  }
}

SignedGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list_file(const std::string& path, const SignedGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_edge_list(out, g);
}

}  // namespace l2sos
