#pragma once

// Robust-and-closest efficiency: each robust group S*_p is a reference
// technology for the signed-slack program; the per-group scores
//
//   theta_p = 1 / (1 + (1/s) sum_r (s_r+ + s_r-) / y_ro)
//
// are aggregated over groups. Two aggregation modes exist:
//   table4-max  max_p theta_p (default; reproduces the published table)
//   paper-min   min_p theta_p (the aggregation formula as printed)

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "facetbench/dataset.hpp"
#include "facetbench/error.hpp"
#include "facetbench/lp.hpp"
#include "facetbench/partition.hpp"
#include "facetbench/sign_pattern.hpp"

namespace facetbench {

enum class Aggregation { table4_max, paper_min };

inline const char* to_string(Aggregation a) { return a == Aggregation::table4_max ? "table4-max" : "paper-min"; }

inline std::optional<Aggregation> parse_aggregation(const std::string& s) {
  if (s == "table4-max") return Aggregation::table4_max;
  if (s == "paper-min") return Aggregation::paper_min;
  return std::nullopt;
}

enum class SlackReading { none, shortfall, distortion };

inline const char* to_string(SlackReading r) {
  switch (r) {
    case SlackReading::none: return "none";
    case SlackReading::shortfall: return "shortfall";
    case SlackReading::distortion: return "distortion";
  }
  return "?";
}

struct RobustConfig {
  SolverConfig solver;
  Aggregation aggregation = Aggregation::table4_max;
  // Warn when the target's output norm falls below this fraction of y_o's.
  double shrinkage_fraction = 0.10;
  // Slacks below this magnitude (relative to max(1, y_ro)) are reported as 0.
  double zero_tol = 1e-9;
};

struct GroupResult {
  std::size_t group = 0;                // 0-based index into the partition
  std::vector<std::size_t> members;     // S*_p
  std::vector<double> lambda;           // aligned with members
  std::vector<double> slacks;           // signed
  std::vector<double> slack_plus;
  std::vector<double> slack_minus;
  std::vector<int> z;
  double distance = 0.0;                // Gamma_p
  double theta = 1.0;
  std::vector<double> target;           // sum_j lambda_j y_j
  std::vector<double> target_inputs;    // sum_j lambda_j x_j
  bool alternate_optima = false;
};

struct EfficiencyResult {
  std::size_t dmu = 0;
  double theta = 1.0;
  std::size_t chosen_group = 0;
  std::vector<GroupResult> groups;
  Aggregation aggregation = Aggregation::table4_max;
  std::vector<SlackReading> readings;  // per output, for the chosen group
  std::vector<std::string> warnings;

  const GroupResult& chosen() const { return groups.at(chosen_group); }
};

inline GroupResult evaluate_group(const Dataset& ds, const std::vector<std::size_t>& group, std::size_t o,
                                  const SolverConfig& cfg = {}, double zero_tol = 1e-9) {
  if (group.empty()) throw DataError("evaluate_group: empty reference group");
  const auto m = static_cast<Eigen::Index>(ds.num_inputs());
  const auto s = static_cast<Eigen::Index>(ds.num_outputs());
  const auto k = static_cast<Eigen::Index>(group.size());
  SignedSlackProblem prob;
  prob.ref_inputs.resize(m, k);
  prob.ref_outputs.resize(s, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    prob.ref_inputs.col(j) = ds.input(group[static_cast<std::size_t>(j)]);
    prob.ref_outputs.col(j) = ds.output(group[static_cast<std::size_t>(j)]);
  }
  prob.x_o = ds.input(o);
  prob.y_o = ds.output(o);
  for (Eigen::Index r = 0; r < s; ++r)
    if (!(prob.y_o(r) > 0.0)) throw DataError("evaluate_group: DMU '" + ds.name(o) + "' has a nonpositive output");

  auto sol = solve_sign_pattern_milp(prob, cfg);

  GroupResult g;
  g.members = group;
  g.lambda = sol.lambda;
  g.z = sol.z;
  g.alternate_optima = sol.alternate_optima;
  for (Eigen::Index r = 0; r < s; ++r) {
    double v = sol.slacks[static_cast<std::size_t>(r)];
    if (std::abs(v) <= zero_tol * std::max(1.0, prob.y_o(r))) v = 0.0;
    g.slacks.push_back(v);
    g.slack_plus.push_back(v > 0.0 ? v : 0.0);
    g.slack_minus.push_back(v < 0.0 ? -v : 0.0);
  }
  double dist = 0.0;
  for (Eigen::Index r = 0; r < s; ++r) dist += std::abs(g.slacks[static_cast<std::size_t>(r)]) / prob.y_o(r);
  g.distance = dist / static_cast<double>(s);
  g.theta = 1.0 / (1.0 + g.distance);
  Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(g.lambda.data(), k);
  Eigen::VectorXd ty = prob.ref_outputs * lam, tx = prob.ref_inputs * lam;
  g.target.assign(ty.data(), ty.data() + ty.size());
  g.target_inputs.assign(tx.data(), tx.data() + tx.size());
  return g;
}

inline EfficiencyResult robust_efficiency(const Dataset& ds, const RobustPartition& part, std::size_t o,
                                          const RobustConfig& cfg = {}) {
  if (part.groups.empty()) throw DataError("robust efficiency needs a nonempty partition");
  EfficiencyResult res;
  res.dmu = o;
  res.aggregation = cfg.aggregation;
  for (std::size_t p = 0; p < part.groups.size(); ++p) {
    auto g = evaluate_group(ds, part.groups[p].members, o, cfg.solver, cfg.zero_tol);
    g.group = p;
    res.groups.push_back(std::move(g));
  }
  res.chosen_group = 0;
  for (std::size_t p = 1; p < res.groups.size(); ++p) {
    const double tp = res.groups[p].theta, tc = res.groups[res.chosen_group].theta;
    const bool better = cfg.aggregation == Aggregation::table4_max ? tp > tc : tp < tc;
    if (better) res.chosen_group = p;
  }
  const auto& g = res.chosen();
  res.theta = g.theta;
  for (double v : g.slacks)
    res.readings.push_back(v > 0.0 ? SlackReading::shortfall : v < 0.0 ? SlackReading::distortion : SlackReading::none);

  const Eigen::VectorXd y_o = ds.output(o);
  const double tnorm = Eigen::Map<const Eigen::VectorXd>(g.target.data(), static_cast<Eigen::Index>(g.target.size())).norm();
  if (tnorm < cfg.shrinkage_fraction * y_o.norm()) {
    res.warnings.push_back("lambda-shrinkage: target output norm is " + std::to_string(tnorm / y_o.norm() * 100.0) +
                           "% of the evaluated DMU's");
  }
  return res;
}

struct BatchRow {
  std::size_t dmu = 0;
  std::optional<EfficiencyResult> result;
  std::string error;
};

inline std::vector<BatchRow> batch_evaluate(const Dataset& ds, const RobustPartition& part,
                                            const RobustConfig& cfg = {}) {
  std::vector<BatchRow> rows;
  for (std::size_t o = 0; o < ds.size(); ++o) {
    BatchRow row;
    row.dmu = o;
    try {
      row.result = robust_efficiency(ds, part, o, cfg);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace facetbench
