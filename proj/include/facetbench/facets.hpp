#pragma once

// Full-dimensional efficient facets of the constant-returns cone.
//
// A facet is spanned by s + m - 1 extreme-efficient DMUs whose data vectors
// (y_j, x_j) are linearly independent. Its supporting hyperplane has normal
// (u, -v); the facet is efficient when u and v are strictly positive and
// every DMU in the support scope lies on or below the hyperplane:
//
//   u . y_j - v . x_j <= 0.
//
// Identification is exhaustive: every (s+m-1)-subset of the extreme set is
// tested, C(|E|, s+m-1) candidates in total. That is trivial for the usual
// DEA sizes (330 subsets for 11 extremes and 4-member facets) but grows fast;
// expect a few hundred extremes with s+m-1 = 4 to take minutes.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "facetbench/dataset.hpp"
#include "facetbench/lp.hpp"

namespace facetbench {

enum class SupportScope { extremes, all };

inline const char* to_string(SupportScope s) { return s == SupportScope::extremes ? "extremes" : "all"; }

struct FacetTolerances {
  double rank = 1e-9;        // smallest / largest singular value
  double residual = 1e-7;    // hyperplane residual after row scaling
  double positivity = 1e-9;  // unit-normal components
  double dedup = 1e-7;       // distance between unit normals
};

struct FacetNormal {
  Eigen::VectorXd u;  // output weights, s
  Eigen::VectorXd v;  // input weights, m
};

struct Facet {
  std::size_t id = 0;                // 1-based, canonical order
  std::vector<std::size_t> members;  // dataset indices, ordered by extreme rank
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  std::vector<double> residuals;     // per member, row-scaled

  // u . y - v . x for an arbitrary point.
  double value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return u.dot(y) - v.dot(x); }
};

// Coincident spanning sets found for one hyperplane: the Regularity
// Condition (affine independence of every s+m subset of extremes) fails.
struct RegularityWarning {
  std::size_t facet_id = 0;
  std::vector<std::size_t> members;  // union of all coincident spanning sets
};

struct FacetSet {
  std::vector<Facet> facets;
  std::vector<std::size_t> extremes;
  SupportScope scope = SupportScope::extremes;
  std::vector<RegularityWarning> warnings;
  std::size_t subsets_examined = 0;

  std::size_t size() const { return facets.size(); }
  bool empty() const { return facets.empty(); }
  const Facet& by_id(std::size_t id) const { return facets.at(id - 1); }
};

namespace detail {

inline Eigen::VectorXd data_row(const Dataset& ds, std::size_t j) {
  const auto s = static_cast<Eigen::Index>(ds.num_outputs());
  const auto m = static_cast<Eigen::Index>(ds.num_inputs());
  Eigen::VectorXd row(s + m);
  row.head(s) = ds.output(j);
  row.tail(m) = ds.input(j);
  return row;
}

// Hyperplane residual u.y_j - v.x_j divided by the norm of (y_j, x_j).
inline double scaled_residual(const Dataset& ds, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                              std::size_t j) {
  const auto row = data_row(ds, j);
  const double scale = row.norm();
  const double r = u.dot(ds.output(j)) - v.dot(ds.input(j));
  return scale > 0.0 ? r / scale : r;
}

}  // namespace detail

// Unit normal (u, v) of the hyperplane through the given DMUs, or nothing
// when they are rank deficient or the normal is not strictly positive.
inline std::optional<FacetNormal> facet_normal(const Dataset& ds, const std::vector<std::size_t>& subset,
                                               const FacetTolerances& tol = {}) {
  const auto s = static_cast<Eigen::Index>(ds.num_outputs());
  const auto m = static_cast<Eigen::Index>(ds.num_inputs());
  const Eigen::Index d = s + m;
  if (static_cast<Eigen::Index>(subset.size()) != d - 1)
    throw DataError("facet_normal: subset must contain exactly s + m - 1 = " + std::to_string(d - 1) + " DMUs");

  Eigen::MatrixXd a(d - 1, d);
  for (Eigen::Index k = 0; k < d - 1; ++k) {
    auto row = detail::data_row(ds, subset[static_cast<std::size_t>(k)]);
    a.row(k) = row.transpose() / row.norm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= tol.rank * sv(0)) return std::nullopt;
  Eigen::VectorXd nvec = svd.matrixV().col(d - 1);

  // Polish: pin the dominant component and solve the square system exactly.
  Eigen::Index pin = 0;
  nvec.cwiseAbs().maxCoeff(&pin);
  Eigen::MatrixXd sq(d - 1, d - 1);
  Eigen::VectorXd rhs = -a.col(pin) * nvec(pin);
  for (Eigen::Index c = 0, k = 0; c < d; ++c) {
    if (c == pin) continue;
    sq.col(k++) = a.col(c);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sq);
  if (lu.isInvertible()) {
    Eigen::VectorXd rest = lu.solve(rhs);
    for (Eigen::Index c = 0, k = 0; c < d; ++c) {
      if (c == pin) continue;
      nvec(c) = rest(k++);
    }
  }
  nvec.normalize();

  // nvec = (u, -v)
  Eigen::VectorXd u = nvec.head(s);
  Eigen::VectorXd v = -nvec.tail(m);
  for (Eigen::Index r = 0; r < s; ++r) {
    if (u(r) == 0.0) continue;
    if (u(r) < 0.0) {
      u = -u;
      v = -v;
    }
    break;
  }
  if (u.minCoeff() <= tol.positivity || v.minCoeff() <= tol.positivity) return std::nullopt;
  return FacetNormal{std::move(u), std::move(v)};
}

inline FacetSet enumerate_facets(const Dataset& ds, const std::vector<std::size_t>& extremes,
                                 SupportScope scope = SupportScope::extremes, const FacetTolerances& tol = {}) {
  FacetSet out;
  out.extremes = extremes;
  out.scope = scope;
  const std::size_t k = ds.facet_rank();
  const std::size_t e = extremes.size();
  if (k == 0 || e < k) return out;

  std::vector<std::size_t> support;
  if (scope == SupportScope::extremes)
    support = extremes;
  else
    for (std::size_t j = 0; j < ds.size(); ++j) support.push_back(j);

  struct Found {
    Facet facet;
    std::set<std::size_t> coincident;
  };
  std::vector<Found> found;

  // Index combinations over extreme ranks in lexicographic order.
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[i] = i;
  for (;;) {
    ++out.subsets_examined;
    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i) subset[i] = extremes[pos[i]];

    if (auto nrm = facet_normal(ds, subset, tol)) {
      bool supporting = true;
      for (auto j : support) {
        if (detail::scaled_residual(ds, nrm->u, nrm->v, j) > tol.residual) {
          supporting = false;
          break;
        }
      }
      if (supporting) {
        Eigen::VectorXd joined(nrm->u.size() + nrm->v.size());
        joined << nrm->u, nrm->v;
        Found* dup = nullptr;
        for (auto& f : found) {
          Eigen::VectorXd other(f.facet.u.size() + f.facet.v.size());
          other << f.facet.u, f.facet.v;
          if ((other - joined).norm() <= tol.dedup) {
            dup = &f;
            break;
          }
        }
        if (dup) {
          dup->coincident.insert(subset.begin(), subset.end());
        } else {
          Facet f;
          f.members = subset;
          f.u = nrm->u;
          f.v = nrm->v;
          for (auto j : subset) f.residuals.push_back(detail::scaled_residual(ds, f.u, f.v, j));
          found.push_back({std::move(f), std::set<std::size_t>(subset.begin(), subset.end())});
        }
      }
    }

    // Next combination.
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == e - k + (i - 1)) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::size_t t = i; t < k; ++t) pos[t] = pos[t - 1] + 1;
  }

  for (std::size_t i = 0; i < found.size(); ++i) {
    auto& f = found[i];
    f.facet.id = i + 1;
    if (f.coincident.size() > f.facet.members.size()) {
      // Keep the extreme-rank order for the warning too.
      std::vector<std::size_t> all;
      for (auto j : extremes)
        if (f.coincident.count(j)) all.push_back(j);
      out.warnings.push_back({f.facet.id, std::move(all)});
    }
    out.facets.push_back(std::move(f.facet));
  }
  return out;
}

// Is (xbar, y) a nonnegative combination of the facet's spanning DMUs?
inline bool facet_contains(const Facet& f, const Eigen::VectorXd& xbar, const Eigen::VectorXd& y, const Dataset& ds,
                           const SolverConfig& cfg = {}) {
  const auto s = static_cast<std::size_t>(y.size());
  const auto m = static_cast<std::size_t>(xbar.size());
  if (s != ds.num_outputs() || m != ds.num_inputs()) throw DataError("facet_contains: dimension mismatch");
  const std::size_t k = f.members.size();
  LpProblem lp(k, Sense::minimize);
  for (std::size_t r = 0; r < s; ++r) {
    std::vector<double> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = ds.y(r, f.members[j]);
    lp.add_row(std::move(row), Relation::equal, y(static_cast<Eigen::Index>(r)));
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = ds.x(i, f.members[j]);
    lp.add_row(std::move(row), Relation::equal, xbar(static_cast<Eigen::Index>(i)));
  }
  return solve_lp(lp, cfg).optimal();
}

inline std::vector<std::string> member_names(const Dataset& ds, const Facet& f) {
  std::vector<std::string> out;
  for (auto j : f.members) out.push_back(ds.name(j));
  return out;
}

}  // namespace facetbench
