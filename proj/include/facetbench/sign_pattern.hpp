#pragma once

// Signed-slack program with binary sign indicators, solved exactly by
// enumerating the 2^s sign patterns.
//
//   min  W * sum_r (1 - z_r) + (1/s) * sum_r |s_r| / y_ro
//   s.t. sum_j lambda_j x_ij <= x_io                  (reference set J)
//        sum_j lambda_j y_rj  = y_ro + s_r
//        z_r = 1  =>  s_r >= 0,    z_r = 0  =>  s_r <= 0
//        lambda >= 0
//
// With W dominant the optimum is lexicographic: first the largest number of
// nonnegative slacks, then the smallest normalized distance. Each pattern is
// one LP, so the priority is exact rather than weight-encoded.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "facetbench/error.hpp"
#include "facetbench/lp.hpp"

namespace facetbench {

struct SignedSlackProblem {
  Eigen::MatrixXd ref_inputs;   // m x k
  Eigen::MatrixXd ref_outputs;  // s x k
  Eigen::VectorXd x_o;          // m
  Eigen::VectorXd y_o;          // s, strictly positive
};

struct SignPatternSolution {
  std::vector<int> z;            // 1: slack nonnegative, 0: slack nonpositive
  std::vector<double> slacks;    // signed s_r
  std::vector<double> slack_plus;
  std::vector<double> slack_minus;
  std::vector<double> lambda;    // over the reference columns
  double distance = 0.0;         // (1/s) sum |s_r| / y_ro
  double objective = 0.0;        // W * sum(1 - z) + distance
  std::size_t pattern = 0;       // bit r set iff z_r = 1
  std::size_t feasible_patterns = 0;
  bool alternate_optima = false;

  int nonnegative_count() const {
    int c = 0;
    for (int v : z) c += v;
    return c;
  }
  double theta() const { return 1.0 / (1.0 + distance); }
};

// Builds the LP for one fixed sign pattern. Variables: lambda (k), s (s).
inline LpProblem sign_pattern_lp(const SignedSlackProblem& p, std::size_t pattern) {
  const auto m = static_cast<std::size_t>(p.ref_inputs.rows());
  const auto s = static_cast<std::size_t>(p.ref_outputs.rows());
  const auto k = static_cast<std::size_t>(p.ref_inputs.cols());
  LpProblem lp(k + s, Sense::minimize);
  for (std::size_t r = 0; r < s; ++r) {
    const bool nonneg = (pattern >> r) & 1U;
    const double w = 1.0 / (static_cast<double>(s) * p.y_o(static_cast<Eigen::Index>(r)));
    lp.cost[k + r] = nonneg ? w : -w;
    lp.lower[k + r] = nonneg ? 0.0 : -kInf;
    lp.upper[k + r] = nonneg ? kInf : 0.0;
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(k + s, 0.0);
    for (std::size_t j = 0; j < k; ++j) row[j] = p.ref_inputs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    lp.add_row(std::move(row), Relation::less_equal, p.x_o(static_cast<Eigen::Index>(i)));
  }
  for (std::size_t r = 0; r < s; ++r) {
    std::vector<double> row(k + s, 0.0);
    for (std::size_t j = 0; j < k; ++j) row[j] = p.ref_outputs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    row[k + r] = -1.0;
    lp.add_row(std::move(row), Relation::equal, p.y_o(static_cast<Eigen::Index>(r)));
  }
  return lp;
}

inline SignPatternSolution solve_sign_pattern_milp(const SignedSlackProblem& p, const SolverConfig& cfg = {}) {
  const auto s = static_cast<std::size_t>(p.ref_outputs.rows());
  const auto k = static_cast<std::size_t>(p.ref_inputs.cols());
  if (p.ref_inputs.cols() != p.ref_outputs.cols() || p.x_o.size() != p.ref_inputs.rows() ||
      p.y_o.size() != p.ref_outputs.rows())
    throw SolverError("sign-pattern: inconsistent problem dimensions");
  if (k == 0) throw SolverError("sign-pattern: empty reference set");
  if (s >= 8 * sizeof(std::size_t) - 1) throw SolverError("sign-pattern: too many outputs to enumerate");
  for (Eigen::Index r = 0; r < p.y_o.size(); ++r)
    if (!(p.y_o(r) > 0.0)) throw SolverError("sign-pattern: evaluated outputs must be strictly positive");

  SignPatternSolution best;
  bool have = false;
  std::size_t feasible = 0;
  const std::size_t patterns = std::size_t{1} << s;
  for (std::size_t pat = 0; pat < patterns; ++pat) {
    auto lp = sign_pattern_lp(p, pat);
    auto sol = solve_lp(lp, cfg);
    if (sol.status == LpStatus::unbounded) throw SolverError("sign-pattern: unbounded pattern LP");
    if (!sol.optimal()) continue;
    ++feasible;
    int count = 0;
    for (std::size_t r = 0; r < s; ++r) count += static_cast<int>((pat >> r) & 1U);
    const double dist = sol.objective;
    bool better = !have;
    if (have) {
      const int bc = best.nonnegative_count();
      const double tie = cfg.optimality_tol * std::max(1.0, std::abs(best.distance));
      better = count > bc || (count == bc && dist < best.distance - tie);
    }
    if (!better) continue;
    have = true;
    best.pattern = pat;
    best.distance = dist;
    best.alternate_optima = sol.alternate_optima;
    best.z.assign(s, 0);
    best.slacks.assign(s, 0.0);
    best.slack_plus.assign(s, 0.0);
    best.slack_minus.assign(s, 0.0);
    best.lambda.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t r = 0; r < s; ++r) {
      best.z[r] = static_cast<int>((pat >> r) & 1U);
      const double v = sol.x[k + r];
      best.slacks[r] = v;
      best.slack_plus[r] = v > 0.0 ? v : 0.0;
      best.slack_minus[r] = v < 0.0 ? -v : 0.0;
    }
  }
  if (!have)
    throw SolverError("sign-pattern: all " + std::to_string(patterns) +
                      " sign patterns infeasible (empty reference technology)");
  best.feasible_patterns = feasible;
  // Distance recomputed from the slacks so it does not inherit LP roundoff.
  double d = 0.0;
  for (std::size_t r = 0; r < s; ++r) d += std::abs(best.slacks[r]) / p.y_o(static_cast<Eigen::Index>(r));
  best.distance = d / static_cast<double>(s);
  best.objective = cfg.priority_weight * static_cast<double>(static_cast<int>(s) - best.nonnegative_count()) +
                   best.distance;
  return best;
}

}  // namespace facetbench
