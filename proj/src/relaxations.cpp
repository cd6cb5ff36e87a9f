#include "l2sos/relaxations.hpp"

#include <cmath>
#include <map>

#include "l2sos/numerics.hpp"

namespace l2sos {

Index SosConstraintSet::johnson_constraint_count() const {
  Index count = 0;
  for (const auto& cls : johnson_classes) count += static_cast<Index>(cls.size()) - 1;
  return count;
}

Index SosConstraintSet::kneser_constraint_count() const { return 2 * static_cast<Index>(kneser_classes.size()); }

SosConstraintSet sos_constraint_set(Index n) {
  if (n < 3) throw InvalidArgument("sos_constraint_set: need n >= 3");
  const PairIndex pairs(n);
  SosConstraintSet out;
  out.n = n;
  for (Index k = 0; k < pairs.size(); ++k) out.diagonal.push_back(k);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.johnson_classes.push_back(johnson_class(pairs, i, j));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k)
        for (Index l = k + 1; l < n; ++l) out.kneser_classes.push_back(kneser_class(pairs, i, j, k, l));
  return out;
}

SdpProblem build_sdp(const Instance& inst) {
  const Index n = inst.size();
  SdpProblem p(n);
  p.objective = inst.observation;
  for (Index i = 0; i < n; ++i) p.add_entry_constraint(i, i, 1.0);
  return p;
}

SdpProblem build_sos4_full(const Instance& inst) {
  const Index n = inst.size();
  if (n > kFullSosLimit) throw LimitExceeded("build_sos4_full: n exceeds " + std::to_string(kFullSosLimit));
  const Index m = n * n;
  SdpProblem p(m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      p.objective(0, i * n + j) += 0.5 * inst.observation(i, j);
      p.objective(i * n + j, 0) += 0.5 * inst.observation(i, j);
    }

  // Entry ((a,b),(c,d)) stands for y_a y_b y_c y_d, which for +-1 labels
  // depends only on the indices occurring an odd number of times.
  std::map<unsigned, std::vector<std::pair<Index, Index>>> classes;
  for (Index r = 0; r < m; ++r)
    for (Index c = r; c < m; ++c) {
      const unsigned mask = (1u << (r / n)) ^ (1u << (r % n)) ^ (1u << (c / n)) ^ (1u << (c % n));
      classes[mask].emplace_back(r, c);
    }
  for (const auto& [mask, members] : classes) {
    if (mask == 0) {
      for (const auto& [r, c] : members) p.add_entry_constraint(r, c, 1.0);
      continue;
    }
    for (std::size_t t = 1; t < members.size(); ++t)
      p.add_equal_entries(members[t - 1].first, members[t - 1].second, members[t].first, members[t].second);
  }
  return p;
}

SdpProblem build_sos4_reduced(const Instance& inst, bool include_class_constraints) {
  const Index n = inst.size();
  if (n < 3) throw InvalidArgument("build_sos4_reduced: need n >= 3");
  const SosConstraintSet set = sos_constraint_set(n);
  SdpProblem p(pair_count(n));
  p.objective = lift_to_pairs(inst.observation) / static_cast<double>(n - 2);
  for (Index k : set.diagonal) p.add_entry_constraint(k, k, 1.0);
  if (!include_class_constraints) return p;
  for (const auto& cls : set.johnson_classes)
    for (std::size_t t = 1; t < cls.size(); ++t)
      p.add_equal_entries(cls[t - 1].a, cls[t - 1].b, cls[t].a, cls[t].b);
  for (const auto& cls : set.kneser_classes)
    for (std::size_t t = 1; t < cls.size(); ++t)
      p.add_equal_entries(cls[t - 1].a, cls[t - 1].b, cls[t].a, cls[t].b);
  return p;
}

RecoveryReport check_recovery(const SdpSolution& sol, const Instance& inst, RelaxationLevel level, double tol) {
  if (sol.status != SdpStatus::Optimal) throw InvalidArgument("check_recovery: solution is not optimal");
  const Eigen::VectorXd target =
      level == RelaxationLevel::Sdp ? inst.truth : level2_vector(inst.truth).entries;
  if (sol.primal.rows() != target.size()) throw InvalidArgument("check_recovery: primal has the wrong size");

  RecoveryReport r;
  const Index m = target.size();
  r.distance = (sol.primal - target * target.transpose()).norm();
  r.exact = r.distance <= tol * static_cast<double>(m);

  const EigenDecomposition d = eigh(sol.primal);
  const Eigen::VectorXd top = d.vectors.col(m - 1);
  Eigen::VectorXd signs = top.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
  if (level == RelaxationLevel::Sdp) {
    if (signs(0) < 0.0) signs = -signs;
    r.rounded = signs;
  } else {
    try {
      r.rounded = factor_level2(Level2Vector{inst.size(), signs}, 0.0);
    } catch (const InconsistentLevel2&) {
      r.rounded.reset();
    }
  }
  r.rounding_recovers = r.rounded && exact_recovery(*r.rounded, inst.truth);
  return r;
}

}  // namespace l2sos
