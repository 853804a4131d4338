#pragma once

// Extreme-efficiency test and the two comparison measures:
//
//   Eff2 (closest): least normalized output slack that reaches the boundary
//        of the intersection of all facet half-spaces (the extended-facet
//        technology), minimized facet by facet.
//   Eff3 (Russell): output-oriented weighted Russell model with equal
//        weights 1/s over the full constant-returns technology, farthest
//        target (maximal slack).
//
// Both report theta = 1 / (1 + (1/s) sum_r s_r / y_ro).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "facetbench/dataset.hpp"
#include "facetbench/error.hpp"
#include "facetbench/facets.hpp"
#include "facetbench/lp.hpp"

namespace facetbench {

enum class MeasureTag { eff2, eff3, extreme_test };
enum class MeasureStatus { scored, on_frontier, out_of_envelope };

inline const char* to_string(MeasureTag t) {
  switch (t) {
    case MeasureTag::eff2: return "eff2";
    case MeasureTag::eff3: return "eff3";
    case MeasureTag::extreme_test: return "extreme-test";
  }
  return "?";
}

inline const char* to_string(MeasureStatus s) {
  switch (s) {
    case MeasureStatus::scored: return "scored";
    case MeasureStatus::on_frontier: return "on-frontier";
    case MeasureStatus::out_of_envelope: return "out-of-envelope";
  }
  return "?";
}

struct MeasureResult {
  std::size_t dmu = 0;
  double theta = std::numeric_limits<double>::quiet_NaN();  // NaN unless scored / on frontier
  std::vector<double> slacks;
  std::vector<std::pair<std::size_t, double>> lambda;  // nonzero intensities, by DMU index
  std::vector<double> target;
  MeasureTag tag = MeasureTag::eff3;
  MeasureStatus status = MeasureStatus::scored;
  std::optional<std::size_t> facet;  // Eff2: facet the target was found on
};

inline double theta_from_slacks(const std::vector<double>& slacks, const Eigen::VectorXd& y_o) {
  double sum = 0.0;
  for (std::size_t r = 0; r < slacks.size(); ++r) sum += std::abs(slacks[r]) / y_o(static_cast<Eigen::Index>(r));
  return 1.0 / (1.0 + sum / static_cast<double>(slacks.size()));
}

struct ExtremeTest {
  double lambda_self = 0.0;
  bool is_extreme = false;
};

// min lambda_o  s.t. sum lambda_j x_j <= x_o, sum lambda_j y_j >= y_o,
// sum lambda_j = 1, lambda >= 0. Extreme iff lambda_o* = 1.
inline ExtremeTest extreme_efficiency_test(const Dataset& ds, std::size_t o, const SolverConfig& cfg = {},
                                           double tol = 1e-7) {
  const std::size_t n = ds.size();
  LpProblem lp(n, Sense::minimize);
  lp.cost[o] = 1.0;
  for (std::size_t i = 0; i < ds.num_inputs(); ++i) {
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = ds.x(i, j);
    lp.add_row(std::move(row), Relation::less_equal, ds.x(i, o));
  }
  for (std::size_t r = 0; r < ds.num_outputs(); ++r) {
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = ds.y(r, j);
    lp.add_row(std::move(row), Relation::greater_equal, ds.y(r, o));
  }
  lp.add_row(std::vector<double>(n, 1.0), Relation::equal, 1.0);
  auto sol = solve_lp(lp, cfg);
  if (!sol.optimal())
    throw SolverError("extreme test for DMU '" + ds.name(o) + "': LP " + to_string(sol.status) +
                      " (lambda_o = 1 is always feasible)");
  const double lam = std::clamp(sol.objective, 0.0, 1.0);
  return {lam, lam >= 1.0 - tol};
}

struct ExtremeSelection {
  std::vector<std::size_t> extremes;  // the set in use, in its canonical order
  std::vector<std::size_t> computed;  // from the LP test, dataset order
  bool pinned = false;
  std::vector<std::size_t> only_computed;  // in computed but not pinned
  std::vector<std::size_t> only_pinned;    // pinned but not computed

  bool discrepancy() const { return !only_computed.empty() || !only_pinned.empty(); }
};

// Computed extreme set; with an override the pinned names are used verbatim
// (their order becomes the canonical extreme order) and differences from the
// computed set are recorded.
inline ExtremeSelection extreme_set(const Dataset& ds, const std::optional<std::vector<std::string>>& pinned = {},
                                    const SolverConfig& cfg = {}) {
  ExtremeSelection sel;
  std::vector<std::size_t> pinned_idx;
  if (pinned) {
    for (const auto& nm : *pinned) {
      auto j = ds.index_of(nm);
      if (!j) throw DataError("extreme override names unknown DMU '" + nm + "'");
      if (std::find(pinned_idx.begin(), pinned_idx.end(), *j) != pinned_idx.end())
        throw DataError("extreme override lists DMU '" + nm + "' twice");
      pinned_idx.push_back(*j);
    }
  }
  for (std::size_t o = 0; o < ds.size(); ++o)
    if (extreme_efficiency_test(ds, o, cfg).is_extreme) sel.computed.push_back(o);

  if (!pinned) {
    sel.extremes = sel.computed;
    return sel;
  }
  sel.pinned = true;
  sel.extremes = pinned_idx;
  for (auto j : sel.computed)
    if (std::find(pinned_idx.begin(), pinned_idx.end(), j) == pinned_idx.end()) sel.only_computed.push_back(j);
  for (auto j : pinned_idx)
    if (std::find(sel.computed.begin(), sel.computed.end(), j) == sel.computed.end()) sel.only_pinned.push_back(j);
  std::sort(sel.only_pinned.begin(), sel.only_pinned.end());
  return sel;
}

// Output-oriented weighted Russell model (weights 1/s), maximal slacks.
inline MeasureResult russell_farthest(const Dataset& ds, std::size_t o, const SolverConfig& cfg = {}) {
  const std::size_t n = ds.size(), m = ds.num_inputs(), s = ds.num_outputs();
  LpProblem lp(n + s, Sense::maximize);
  for (std::size_t r = 0; r < s; ++r) lp.cost[n + r] = 1.0 / (static_cast<double>(s) * ds.y(r, o));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(n + s, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[j] = ds.x(i, j);
    lp.add_row(std::move(row), Relation::less_equal, ds.x(i, o));
  }
  for (std::size_t r = 0; r < s; ++r) {
    std::vector<double> row(n + s, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[j] = ds.y(r, j);
    row[n + r] = -1.0;
    lp.add_row(std::move(row), Relation::equal, ds.y(r, o));
  }
  auto sol = solve_lp(lp, cfg);
  if (sol.status == LpStatus::unbounded)
    throw SolverError("Russell model for DMU '" + ds.name(o) + "' is unbounded (some output freely producible)");
  if (!sol.optimal()) throw SolverError("Russell model for DMU '" + ds.name(o) + "' infeasible");

  MeasureResult res;
  res.dmu = o;
  res.tag = MeasureTag::eff3;
  const Eigen::VectorXd y_o = ds.output(o);
  for (std::size_t r = 0; r < s; ++r) {
    double v = sol.x[n + r];
    if (std::abs(v) <= 1e-9 * std::max(1.0, y_o(static_cast<Eigen::Index>(r)))) v = 0.0;
    res.slacks.push_back(v);
    res.target.push_back(y_o(static_cast<Eigen::Index>(r)) + v);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (sol.x[j] > 0.0) res.lambda.emplace_back(j, sol.x[j]);
  res.theta = theta_from_slacks(res.slacks, y_o);
  res.status = res.theta >= 1.0 ? MeasureStatus::on_frontier : MeasureStatus::scored;
  return res;
}

// Closest boundary point of the facet half-space intersection reachable by
// nonnegative output slacks.
inline MeasureResult closest_on_efpps(const FacetSet& facets, const Dataset& ds, std::size_t o,
                                      const SolverConfig& cfg = {}, double tol = 1e-7) {
  if (facets.empty()) throw DataError("closest measure needs at least one facet");
  const std::size_t s = ds.num_outputs();
  const Eigen::VectorXd x_o = ds.input(o), y_o = ds.output(o);
  Eigen::VectorXd row_o(static_cast<Eigen::Index>(s) + x_o.size());
  row_o << y_o, x_o;
  const double scale = row_o.norm();

  MeasureResult res;
  res.dmu = o;
  res.tag = MeasureTag::eff2;
  for (const auto& f : facets.facets) {
    if (f.value(x_o, y_o) / scale > tol) {
      res.status = MeasureStatus::out_of_envelope;
      res.facet = f.id;
      return res;
    }
  }

  double best = kInf;
  std::vector<double> best_slacks;
  for (const auto& k : facets.facets) {
    LpProblem lp(s, Sense::minimize);
    for (std::size_t r = 0; r < s; ++r) lp.cost[r] = 1.0 / (static_cast<double>(s) * y_o(static_cast<Eigen::Index>(r)));
    std::vector<double> eq(k.u.data(), k.u.data() + k.u.size());
    lp.add_row(eq, Relation::equal, -k.value(x_o, y_o));
    for (const auto& j : facets.facets) {
      if (j.id == k.id) continue;
      std::vector<double> row(j.u.data(), j.u.data() + j.u.size());
      lp.add_row(std::move(row), Relation::less_equal, std::max(0.0, -j.value(x_o, y_o)));
    }
    auto sol = solve_lp(lp, cfg);
    if (!sol.optimal()) continue;
    if (sol.objective < best - cfg.optimality_tol) {
      best = sol.objective;
      best_slacks = sol.x;
      res.facet = k.id;
    }
  }
  if (best == kInf)
    throw SolverError("closest measure for DMU '" + ds.name(o) + "': no facet reachable from an in-envelope point");

  for (std::size_t r = 0; r < s; ++r) {
    double v = best_slacks[r];
    if (std::abs(v) <= 1e-9 * std::max(1.0, y_o(static_cast<Eigen::Index>(r)))) v = 0.0;
    res.slacks.push_back(v);
    res.target.push_back(y_o(static_cast<Eigen::Index>(r)) + v);
  }
  res.theta = theta_from_slacks(res.slacks, y_o);
  res.status = res.theta >= 1.0 ? MeasureStatus::on_frontier : MeasureStatus::scored;
  return res;
}

}  // namespace facetbench
