#pragma once

// Revenue under risk-dependent output prices.
//
// A price scenario maps a risk parameter delta to a strictly positive price
// vector P(delta); revenue is R(y, delta) = P(delta) . y. On a facet with the
// input vector fixed at xbar, the facet-local optimum maximizes R over the
// nonnegative combinations of the spanning DMUs that use exactly xbar; the
// global optimum maximizes over the union of all facets.

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "facetbench/dataset.hpp"
#include "facetbench/error.hpp"
#include "facetbench/facets.hpp"
#include "facetbench/lp.hpp"
#include "facetbench/partition.hpp"

namespace facetbench {

struct AffinePrice {
  std::string name;
  double base = 0.0;
  double slope = 0.0;
};

class PriceScenario {
 public:
  enum class Kind { affine, table };

  static PriceScenario affine(std::vector<AffinePrice> outputs, double lo, double hi) {
    if (outputs.empty()) throw DataError("price scenario: no outputs");
    if (!(lo <= hi)) throw DataError("price scenario: empty delta domain");
    PriceScenario sc;
    sc.kind_ = Kind::affine;
    sc.affine_ = std::move(outputs);
    sc.lo_ = lo;
    sc.hi_ = hi;
    // An affine function is positive on an interval iff it is at both ends.
    for (const auto& p : sc.affine_)
      for (double d : {lo, hi})
        if (!(p.base + p.slope * d > 0.0))
          throw DataError("price scenario: price of '" + p.name + "' is not strictly positive at delta = " +
                          detail::format_number(d));
    return sc;
  }

  static PriceScenario table(std::map<double, std::vector<double>> rows) {
    if (rows.empty()) throw DataError("price scenario: empty price table");
    PriceScenario sc;
    sc.kind_ = Kind::table;
    const std::size_t s = rows.begin()->second.size();
    for (const auto& [d, prices] : rows) {
      if (prices.size() != s) throw DataError("price scenario: table rows differ in length");
      for (double p : prices)
        if (!(p > 0.0)) throw DataError("price scenario: nonpositive price at delta = " + detail::format_number(d));
    }
    sc.table_ = std::move(rows);
    sc.lo_ = sc.table_.begin()->first;
    sc.hi_ = sc.table_.rbegin()->first;
    return sc;
  }

  Kind kind() const { return kind_; }
  std::size_t num_outputs() const { return kind_ == Kind::affine ? affine_.size() : table_.begin()->second.size(); }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  const std::vector<AffinePrice>& affine_prices() const { return affine_; }
  const std::map<double, std::vector<double>>& table_prices() const { return table_; }

  bool in_domain(double delta) const {
    if (kind_ == Kind::affine) return delta >= lo_ && delta <= hi_;
    return table_.count(delta) > 0;
  }

 private:
  friend Eigen::VectorXd price_at(const PriceScenario& sc, double delta);

  Kind kind_ = Kind::affine;
  std::vector<AffinePrice> affine_;
  std::map<double, std::vector<double>> table_;
  double lo_ = 0.0, hi_ = 0.0;
};

inline Eigen::VectorXd price_at(const PriceScenario& sc, double delta) {
  if (!std::isfinite(delta) || !sc.in_domain(delta))
    throw DataError("delta = " + detail::format_number(delta) + " outside the scenario domain");
  Eigen::VectorXd p(static_cast<Eigen::Index>(sc.num_outputs()));
  if (sc.kind_ == PriceScenario::Kind::affine) {
    for (std::size_t i = 0; i < sc.affine_.size(); ++i)
      p(static_cast<Eigen::Index>(i)) = sc.affine_[i].base + sc.affine_[i].slope * delta;
  } else {
    const auto& row = sc.table_.at(delta);
    for (std::size_t i = 0; i < row.size(); ++i) p(static_cast<Eigen::Index>(i)) = row[i];
  }
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!(p(i) > 0.0)) throw DataError("nonpositive price for output " + std::to_string(i + 1));
  return p;
}

inline double revenue(const Eigen::VectorXd& y, const PriceScenario& sc, double delta) {
  auto p = price_at(sc, delta);
  if (p.size() != y.size()) throw DataError("revenue: output dimension does not match the price vector");
  return p.dot(y);
}

// {"outputs": [{"name", "base", "slope"}...], "delta_domain": [lo, hi]}
// or {"table": {"0": [...], "1": [...]}}
inline PriceScenario scenario_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("table")) {
      std::map<double, std::vector<double>> rows;
      for (const auto& [key, val] : j.at("table").items()) {
        auto d = detail::parse_number(key);
        if (!d) throw DataError("price table key '" + key + "' is not a number");
        rows[*d] = val.get<std::vector<double>>();
      }
      return PriceScenario::table(std::move(rows));
    }
    std::vector<AffinePrice> outs;
    for (const auto& o : j.at("outputs"))
      outs.push_back({o.value("name", std::string()), o.at("base").get<double>(), o.value("slope", 0.0)});
    const auto dom = j.at("delta_domain");
    if (!dom.is_array() || dom.size() != 2) throw DataError("delta_domain must be [lo, hi]");
    return PriceScenario::affine(std::move(outs), dom[0].get<double>(), dom[1].get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("price scenario: ") + e.what());
  }
}

inline PriceScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open price file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  return scenario_from_json(j);
}

enum class Uniqueness { unique, facet_degenerate, edge_degenerate };

inline const char* to_string(Uniqueness u) {
  switch (u) {
    case Uniqueness::unique: return "unique";
    case Uniqueness::facet_degenerate: return "facet-degenerate";
    case Uniqueness::edge_degenerate: return "edge-degenerate";
  }
  return "?";
}

struct OptimalPoint {
  Eigen::VectorXd outputs;
  std::vector<std::size_t> members;  // facet members the intensities refer to
  std::vector<double> lambda;
  double revenue = 0.0;
  Uniqueness uniqueness = Uniqueness::unique;
};

namespace detail {

// Output-price vector parallel to the facet's output normal.
inline bool parallel(const Eigen::VectorXd& p, const Eigen::VectorXd& u, double tol = 1e-12) {
  const double c = p.dot(u) / (p.norm() * u.norm());
  return c >= 1.0 - tol;
}

inline std::optional<OptimalPoint> facet_optimum_at(const Facet& f, const Dataset& ds, const Eigen::VectorXd& xbar,
                                                    const Eigen::VectorXd& prices, const SolverConfig& cfg) {
  const std::size_t k = f.members.size();
  LpProblem lp(k, Sense::maximize);
  for (std::size_t j = 0; j < k; ++j) lp.cost[j] = prices.dot(ds.output(f.members[j]));
  for (std::size_t i = 0; i < ds.num_inputs(); ++i) {
    std::vector<double> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = ds.x(i, f.members[j]);
    lp.add_row(std::move(row), Relation::equal, xbar(static_cast<Eigen::Index>(i)));
  }
  auto sol = solve_lp(lp, cfg);
  if (sol.status == LpStatus::unbounded) throw SolverError("facet optimum unbounded");
  if (!sol.optimal()) return std::nullopt;
  OptimalPoint pt;
  pt.members = f.members;
  pt.lambda = sol.x;
  pt.outputs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ds.num_outputs()));
  for (std::size_t j = 0; j < k; ++j) pt.outputs += sol.x[j] * ds.output(f.members[j]);
  pt.revenue = prices.dot(pt.outputs);
  if (sol.alternate_optima)
    pt.uniqueness = parallel(prices, f.u) ? Uniqueness::facet_degenerate : Uniqueness::edge_degenerate;
  return pt;
}

}  // namespace detail

inline OptimalPoint facet_optimum(const Facet& f, const Dataset& ds, const Eigen::VectorXd& xbar,
                                  const PriceScenario& sc, double delta, const SolverConfig& cfg = {}) {
  auto pt = detail::facet_optimum_at(f, ds, xbar, price_at(sc, delta), cfg);
  if (!pt) throw DataError("input vector is not attainable on facet " + std::to_string(f.id));
  return *pt;
}

struct GlobalOptimum {
  OptimalPoint point;
  std::vector<std::size_t> owners;           // facet ids attaining the maximum
  std::vector<std::optional<double>> values;  // per facet (by position), empty when infeasible
};

namespace detail {

inline GlobalOptimum global_optimum_at(const FacetSet& facets, const Dataset& ds, const Eigen::VectorXd& xbar,
                                       const Eigen::VectorXd& prices, const SolverConfig& cfg,
                                       double owner_tol = 1e-9) {
  if (facets.empty()) throw DataError("global optimum needs at least one facet");
  GlobalOptimum g;
  std::optional<std::size_t> best;
  std::vector<std::optional<OptimalPoint>> pts;
  for (std::size_t k = 0; k < facets.size(); ++k) {
    auto pt = facet_optimum_at(facets.facets[k], ds, xbar, prices, cfg);
    g.values.push_back(pt ? std::optional<double>(pt->revenue) : std::nullopt);
    if (pt && (!best || pt->revenue > *g.values[*best])) best = k;
    pts.push_back(std::move(pt));
  }
  if (!best) throw DataError("input vector is not attainable on any facet");
  const double top = *g.values[*best];
  for (std::size_t k = 0; k < facets.size(); ++k)
    if (g.values[k] && *g.values[k] >= top - owner_tol * std::max(1.0, std::abs(top)))
      g.owners.push_back(facets.facets[k].id);
  g.point = *pts[*best];
  return g;
}

}  // namespace detail

inline GlobalOptimum global_optimum(const FacetSet& facets, const Dataset& ds, const Eigen::VectorXd& xbar,
                                    const PriceScenario& sc, double delta, const SolverConfig& cfg = {}) {
  return detail::global_optimum_at(facets, ds, xbar, price_at(sc, delta), cfg);
}

struct AssumptionReport {
  std::vector<std::size_t> containing;  // facet ids holding yhat
  bool monotone_revenue = true;         // R(y, d1) <= R(y, d0) at every generator
  bool bounded_recovery = true;         // R(y_k*(d1), d1) <= R(yhat, d0)
  // Same bound over every facet, not only the containing ones. Needed before
  // the global post-risk optimum can be compared with R(yhat, d0).
  bool bounded_recovery_all = true;
  std::vector<std::string> violations;

  bool holds() const { return monotone_revenue && bounded_recovery; }
};

// Revenue is linear, so non-increase in delta over a facet's cone holds iff
// it holds at every spanning DMU. Only facets containing yhat are checked.
inline AssumptionReport check_assumptions(const PriceScenario& sc, const FacetSet& facets, const Dataset& ds,
                                          const Eigen::VectorXd& yhat, const Eigen::VectorXd& xbar, double delta0,
                                          double delta1, const SolverConfig& cfg = {}, double tol = 1e-9) {
  AssumptionReport rep;
  for (const auto& f : facets.facets)
    if (facet_contains(f, xbar, yhat, ds, cfg)) rep.containing.push_back(f.id);
  if (rep.containing.empty()) throw DataError("check_assumptions: the point lies on no facet");

  const double r_hat0 = revenue(yhat, sc, delta0);
  std::set<std::size_t> checked;
  for (auto id : rep.containing) {
    const auto& f = facets.by_id(id);
    for (auto j : f.members) {
      if (!checked.insert(j).second) continue;
      const double r1 = revenue(ds.output(j), sc, delta1), r0 = revenue(ds.output(j), sc, delta0);
      if (r1 > r0 + tol * std::max(1.0, std::abs(r0))) {
        rep.monotone_revenue = false;
        rep.violations.push_back("revenue increases with delta at generator '" + ds.name(j) + "' (" +
                                 detail::format_number(r0) + " -> " + detail::format_number(r1) + ")");
      }
    }
    const auto post = facet_optimum(f, ds, xbar, sc, delta1, cfg);
    if (post.revenue > r_hat0 + tol * std::max(1.0, std::abs(r_hat0))) {
      rep.bounded_recovery = false;
      rep.violations.push_back("post-risk optimum on facet " + std::to_string(id) + " (" +
                               detail::format_number(post.revenue) + ") exceeds pre-risk revenue " +
                               detail::format_number(r_hat0));
    }
  }
  rep.bounded_recovery_all = rep.bounded_recovery;
  for (const auto& f : facets.facets) {
    if (!rep.bounded_recovery_all) break;
    if (std::find(rep.containing.begin(), rep.containing.end(), f.id) != rep.containing.end()) continue;
    const auto post = facet_optimum(f, ds, xbar, sc, delta1, cfg);
    rep.bounded_recovery_all = post.revenue <= r_hat0 + tol * std::max(1.0, std::abs(r_hat0));
  }
  return rep;
}

struct WithstandCapacity {
  double wr = 0.0;     // R(y_k*(d1), d1) - R(yhat, d1)
  double bound = 0.0;  // R(yhat, d0) - R(yhat, d1)
  bool within_bound = true;
  double post_risk_optimum = 0.0;
};

inline WithstandCapacity withstand_capacity(const Facet& f, const Dataset& ds, const Eigen::VectorXd& yhat,
                                            const Eigen::VectorXd& xbar, const PriceScenario& sc, double delta0,
                                            double delta1, const SolverConfig& cfg = {}, double tol = 1e-9) {
  if (!facet_contains(f, xbar, yhat, ds, cfg))
    throw DataError("withstand_capacity: the point is not on facet " + std::to_string(f.id));
  WithstandCapacity w;
  const double r_hat1 = revenue(yhat, sc, delta1);
  w.post_risk_optimum = facet_optimum(f, ds, xbar, sc, delta1, cfg).revenue;
  w.wr = w.post_risk_optimum - r_hat1;
  w.bound = revenue(yhat, sc, delta0) - r_hat1;
  w.within_bound = w.wr <= w.bound + tol * std::max(1.0, std::abs(w.bound));
  return w;
}

// Revenue losses after the shock, measured from the pre-risk revenue of yhat.
struct RiskLosses {
  double pre_risk = 0.0;      // R(yhat, d0) - R(yhat, d1), no adjustment
  double single_facet = 0.0;  // R(yhat, d0) - R(y_k*(d1), d1)
  double multi_facet = 0.0;   // R(yhat, d0) - R(y*(d1), d1)
};

inline RiskLosses risk_losses(const FacetSet& facets, const Facet& f, const Dataset& ds, const Eigen::VectorXd& yhat,
                              const Eigen::VectorXd& xbar, const PriceScenario& sc, double delta0, double delta1,
                              const SolverConfig& cfg = {}) {
  const double r0 = revenue(yhat, sc, delta0);
  RiskLosses l;
  l.pre_risk = r0 - revenue(yhat, sc, delta1);
  l.single_facet = r0 - facet_optimum(f, ds, xbar, sc, delta1, cfg).revenue;
  l.multi_facet = r0 - global_optimum(facets, ds, xbar, sc, delta1, cfg).point.revenue;
  return l;
}

enum class OptimumShape { unique_vertex, whole_facet, edge };

inline const char* to_string(OptimumShape s) {
  switch (s) {
    case OptimumShape::unique_vertex: return "unique vertex";
    case OptimumShape::whole_facet: return "case 1: whole facet optimal";
    case OptimumShape::edge: return "case 2: edge of ties";
  }
  return "?";
}

struct FacetVertex {
  std::vector<std::size_t> basis;  // members with nonzero intensity
  Eigen::VectorXd outputs;
  double revenue = 0.0;
};

struct UniquenessDiagnosis {
  OptimumShape shape = OptimumShape::unique_vertex;
  std::vector<FacetVertex> vertices;  // all vertices of the facet slice
  std::vector<std::size_t> optimal;   // indices into vertices
};

// Vertices of {sum lambda_j y_j : sum lambda_j x_j = xbar, lambda >= 0} are
// the basic solutions with m members active.
inline std::vector<FacetVertex> facet_vertices(const Facet& f, const Dataset& ds, const Eigen::VectorXd& xbar) {
  const std::size_t k = f.members.size(), m = ds.num_inputs();
  std::vector<FacetVertex> out;
  std::vector<std::size_t> pick(m);
  for (std::size_t i = 0; i < m; ++i) pick[i] = i;
  if (m > k) return out;
  for (;;) {
    Eigen::MatrixXd xb(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    Eigen::MatrixXd yb(static_cast<Eigen::Index>(ds.num_outputs()), static_cast<Eigen::Index>(m));
    for (std::size_t c = 0; c < m; ++c) {
      xb.col(static_cast<Eigen::Index>(c)) = ds.input(f.members[pick[c]]);
      yb.col(static_cast<Eigen::Index>(c)) = ds.output(f.members[pick[c]]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(xb);
    if (lu.isInvertible()) {
      Eigen::VectorXd lam = lu.solve(xbar);
      if (lam.minCoeff() >= -1e-12) {
        FacetVertex v;
        for (std::size_t c = 0; c < m; ++c)
          if (lam(static_cast<Eigen::Index>(c)) > 1e-12) v.basis.push_back(f.members[pick[c]]);
        v.outputs = yb * lam.cwiseMax(0.0);
        bool dup = false;
        for (const auto& w : out)
          if ((w.outputs - v.outputs).norm() <= 1e-9 * std::max(1.0, v.outputs.norm())) dup = true;
        if (!dup) out.push_back(std::move(v));
      }
    }
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == k - m + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t t = i; t < m; ++t) pick[t] = pick[t - 1] + 1;
  }
  return out;
}

inline UniquenessDiagnosis uniqueness_diagnostics(const Facet& f, const Dataset& ds, const Eigen::VectorXd& xbar,
                                                  const PriceScenario& sc, double delta, double tol = 1e-9) {
  const auto p = price_at(sc, delta);
  UniquenessDiagnosis d;
  d.vertices = facet_vertices(f, ds, xbar);
  double top = -kInf;
  for (auto& v : d.vertices) {
    v.revenue = p.dot(v.outputs);
    top = std::max(top, v.revenue);
  }
  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    if (d.vertices[i].revenue >= top - tol * std::max(1.0, std::abs(top))) d.optimal.push_back(i);
  if (detail::parallel(p, f.u))
    d.shape = OptimumShape::whole_facet;
  else if (d.optimal.size() >= 2)
    d.shape = OptimumShape::edge;
  return d;
}

// Independent uniform prices on [lo, hi] for every output.
struct PriceSampler {
  double lo = 0.1;
  double hi = 10.0;

  friend bool operator==(const PriceSampler&, const PriceSampler&) = default;
};

// Trial i's prices depend only on (seed, i).
inline Eigen::VectorXd sample_prices(const PriceSampler& sampler, std::uint64_t seed, std::uint64_t trial,
                                     std::size_t s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 gen(seq);
  Eigen::VectorXd p(static_cast<Eigen::Index>(s));
  for (Eigen::Index r = 0; r < p.size(); ++r) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    p(r) = sampler.lo + (sampler.hi - sampler.lo) * u;
  }
  return p;
}

struct CoverageReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  PriceSampler sampler;
  std::vector<std::size_t> facet_ids;
  std::vector<std::size_t> facet_counts;     // |A_k|
  std::vector<FacetIds> strategies;
  std::vector<std::size_t> strategy_counts;  // |union_{k in K} A_k|
  std::vector<std::vector<std::uint8_t>> incidence;  // trials x facets
  std::size_t containment_pairs = 0;         // (K1, K2) with K1 subset of K2
  std::vector<std::string> violations;       // set inequalities that failed

  friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

inline CoverageReport simulate_coverage(const FacetSet& facets, const Dataset& ds, const Eigen::VectorXd& xbar,
                                        const std::vector<FacetIds>& strategies, const PriceSampler& sampler,
                                        std::size_t trials, std::uint64_t seed, const SolverConfig& cfg = {}) {
  if (facets.empty()) throw DataError("coverage simulation needs at least one facet");
  if (trials < 1) throw DataError("coverage simulation needs at least one trial");
  if (strategies.empty()) throw DataError("coverage simulation needs at least one strategy");
  if (!(sampler.lo > 0.0) || !(sampler.hi >= sampler.lo)) throw DataError("price sampler range must be positive");
  for (const auto& k : strategies) {
    if (k.empty()) throw DataError("empty strategy");
    for (auto id : k)
      if (id < 1 || id > facets.size()) throw DataError("strategy names unknown facet " + std::to_string(id));
  }

  CoverageReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.sampler = sampler;
  rep.strategies = strategies;
  const std::size_t nf = facets.size();
  for (const auto& f : facets.facets) rep.facet_ids.push_back(f.id);
  rep.facet_counts.assign(nf, 0);
  rep.strategy_counts.assign(strategies.size(), 0);
  rep.incidence.assign(trials, std::vector<std::uint8_t>(nf, 0));

  for (std::size_t t = 0; t < trials; ++t) {
    const auto p = sample_prices(sampler, seed, t, ds.num_outputs());
    const auto g = detail::global_optimum_at(facets, ds, xbar, p, cfg);
    for (auto id : g.owners) {
      rep.incidence[t][id - 1] = 1;
      ++rep.facet_counts[id - 1];
    }
  }

  // Union counts and per-sample set inequalities.
  std::vector<std::vector<std::uint8_t>> in_union(strategies.size(), std::vector<std::uint8_t>(trials, 0));
  for (std::size_t si = 0; si < strategies.size(); ++si) {
    for (std::size_t t = 0; t < trials; ++t) {
      for (auto id : strategies[si])
        if (rep.incidence[t][id - 1]) in_union[si][t] = 1;
      rep.strategy_counts[si] += in_union[si][t];
    }
    for (auto id : strategies[si])
      if (rep.strategy_counts[si] < rep.facet_counts[id - 1])
        rep.violations.push_back("strategy " + std::to_string(si) + " covers fewer samples than facet " +
                                 std::to_string(id));
  }
  for (std::size_t a = 0; a < strategies.size(); ++a) {
    for (std::size_t b = 0; b < strategies.size(); ++b) {
      if (a == b) continue;
      const auto& k1 = strategies[a];
      const auto& k2 = strategies[b];
      if (!std::includes(k2.begin(), k2.end(), k1.begin(), k1.end())) continue;
      ++rep.containment_pairs;
      for (std::size_t t = 0; t < trials; ++t) {
        if (in_union[a][t] && !in_union[b][t]) {
          rep.violations.push_back("sample " + std::to_string(t) + " covered by strategy " + std::to_string(a) +
                                   " but not by its superset " + std::to_string(b));
          break;
        }
      }
      if (rep.strategy_counts[a] > rep.strategy_counts[b])
        rep.violations.push_back("count(strategy " + std::to_string(a) + ") > count(strategy " + std::to_string(b) +
                                 ")");
    }
  }
  return rep;
}

inline nlohmann::json coverage_to_json(const CoverageReport& rep) {
  nlohmann::json j;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["sampler"] = {{"law", "independent-uniform"}, {"lo", rep.sampler.lo}, {"hi", rep.sampler.hi}};
  nlohmann::json facets = nlohmann::json::array();
  for (std::size_t k = 0; k < rep.facet_ids.size(); ++k)
    facets.push_back({{"facet", rep.facet_ids[k]}, {"count", rep.facet_counts[k]}});
  j["facets"] = facets;
  nlohmann::json strategies = nlohmann::json::array();
  for (std::size_t s = 0; s < rep.strategies.size(); ++s)
    strategies.push_back({{"facets", std::vector<std::size_t>(rep.strategies[s].begin(), rep.strategies[s].end())},
                          {"count", rep.strategy_counts[s]}});
  j["strategies"] = strategies;
  j["containment_pairs"] = rep.containment_pairs;
  j["violations"] = rep.violations;
  return j;
}

}  // namespace facetbench
