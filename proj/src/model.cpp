#include "l2sos/model.hpp"

#include <cstdio>
#include <limits>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace l2sos {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double edge_uniform(std::uint64_t seed, Index u, Index v) {
  if (u > v) std::swap(u, v);
  const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
  const std::uint64_t bits = splitmix64(seed ^ splitmix64(key));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

namespace {

void check_truth(const Eigen::VectorXd& truth, Index n) {
  if (truth.size() != n) throw InvalidArgument("truth length does not match the graph");
  for (Index i = 0; i < n; ++i)
    if (truth(i) != 1.0 && truth(i) != -1.0) throw InvalidArgument("truth entries must be +-1");
}

void check_graph(const SignedGraph& g) {
  if (g.size() < 2) throw InvalidArgument("instance graph needs at least 2 vertices");
  if (!g.is_unweighted()) throw InvalidArgument("instance graph must be unweighted");
  if (!g.is_connected()) throw InvalidArgument("instance graph must be connected");
}

}  // namespace

Instance sample(const SignedGraph& g, const Eigen::VectorXd& truth, double p, std::uint64_t seed) {
  check_graph(g);
  check_truth(truth, g.size());
  if (!(p == 0.0 || (p > 0.0 && p < 0.5))) throw InvalidArgument("noise p must lie in (0, 0.5) or be 0");
  const Index n = g.size();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const double sign = edge_uniform(seed, e.u, e.v) < p ? -1.0 : 1.0;
    x(e.u, e.v) = sign * truth(e.u) * truth(e.v);
    x(e.v, e.u) = x(e.u, e.v);
  }
  return Instance{g, truth, p, std::move(x), seed};
}

Instance make_instance(const SignedGraph& g, const Eigen::VectorXd& truth, double p,
                       const Eigen::MatrixXd& observation, std::uint64_t seed) {
  check_graph(g);
  check_truth(truth, g.size());
  const Index n = g.size();
  if (observation.rows() != n || observation.cols() != n) throw InvalidArgument("observation has wrong shape");
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const double v = observation(i, j);
      if (v != observation(j, i)) throw InvalidArgument("observation must be symmetric");
      if (g.has_edge(i, j) ? (v != 1.0 && v != -1.0) : v != 0.0)
        throw InvalidArgument("observation must be +-1 exactly on graph edges");
    }
  return Instance{g, truth, p, observation, seed};
}

double objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) { return y.dot(x * y); }

MapEstimate brute_force_map(const Instance& inst) {
  const Index n = inst.size();
  if (n > kBruteForceLimit) throw LimitExceeded("brute_force_map: n exceeds " + std::to_string(kBruteForceLimit));
  const std::vector<Edge> edges = inst.graph.edges();
  std::vector<double> obs;
  obs.reserve(edges.size());
  for (const Edge& e : edges) obs.push_back(inst.observation(e.u, e.v));

  // Vertex j (1..n-1) maps to bit n-1-j, so counting upward walks the
  // labelings in lexicographic order with +1 before -1.
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  std::uint64_t best_code = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t code = 0; code < count; ++code) {
    const auto label = [&](Index v) { return v == 0 ? 0u : static_cast<unsigned>((code >> (n - 1 - v)) & 1u); };
    double value = 0.0;
    for (std::size_t k = 0; k < edges.size(); ++k)
      value += (label(edges[k].u) ^ label(edges[k].v)) ? -obs[k] : obs[k];
    value *= 2.0;
    if (value > best) {
      best = value;
      best_code = code;
    }
  }
  MapEstimate out;
  out.labels = Eigen::VectorXd::Ones(n);
  for (Index v = 1; v < n; ++v)
    if ((best_code >> (n - 1 - v)) & 1u) out.labels(v) = -1.0;
  out.objective = objective(inst.observation, out.labels);
  return out;
}

bool exact_recovery(const Eigen::VectorXd& labels, const Eigen::VectorXd& truth) {
  if (labels.size() != truth.size()) throw InvalidArgument("exact_recovery: length mismatch");
  return labels == truth || labels == -truth;
}

Instance read_instance(std::istream& in) {
  std::string line;
  std::ostringstream graph_text;
  std::vector<double> truth;
  double p = 0.0;
  std::uint64_t seed = 0;
  bool have_truth = false;
  bool have_p = false;
  struct Obs {
    Index i, j;
    double v;
  };
  std::vector<Obs> observed;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    const auto fail = [&](const std::string& what) {
      throw ParseError("instance line " + std::to_string(line_no) + ": " + what);
    };
    if (head == "truth") {
      double v;
      while (ls >> v) truth.push_back(v);
      have_truth = true;
    } else if (head == "p") {
      if (!(ls >> p)) fail("bad noise value");
      have_p = true;
    } else if (head == "seed") {
      if (!(ls >> seed)) fail("bad seed");
    } else if (head == "obs") {
      Obs o{};
      if (!(ls >> o.i >> o.j >> o.v)) fail("expected 'obs <i> <j> <+-1>'");
      observed.push_back(o);
    } else {
      graph_text << line << '\n';
    }
  }
  std::istringstream graph_in(graph_text.str());
  SignedGraph g = read_edge_list(graph_in);
  if (!have_truth) throw ParseError("instance: missing 'truth' line");
  if (!have_p) throw ParseError("instance: missing 'p' line");
  const Index n = g.size();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (const Obs& o : observed) {
    if (o.i < 0 || o.j < 0 || o.i >= n || o.j >= n || o.i == o.j) throw ParseError("instance: obs vertex out of range");
    x(o.i, o.j) = o.v;
    x(o.j, o.i) = o.v;
  }
  const Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(truth.data(), static_cast<Index>(truth.size()));
  try {
    return make_instance(g, t, p, x, seed);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

void write_instance(std::ostream& out, const Instance& inst) {
  write_edge_list(out, inst.graph);
  out << "truth";
  for (Index i = 0; i < inst.truth.size(); ++i) out << ' ' << (inst.truth(i) > 0 ? 1 : -1);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", inst.noise);
  out << "\np " << buf << "\nseed " << inst.seed << '\n';
  for (const Edge& e : inst.graph.edges())
    out << "obs " << e.u << ' ' << e.v << ' ' << (inst.observation(e.u, e.v) > 0 ? 1 : -1) << '\n';
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_instance(in);
}

void write_instance_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_instance(out, inst);
}

}  // namespace l2sos
