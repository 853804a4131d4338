#pragma once

// Dense two-phase simplex for the small linear programs DEA emits.
//
// Problems are stated with arbitrary variable bounds and mixed row relations;
// they are rewritten internally into   A x {<=,=,>=} b,  x >= 0   with
// nonnegative right-hand sides, equilibrated row by row, and solved on a full
// tableau. Pivoting follows Bland's rule (lowest-index entering column,
// lowest-index leaving basic variable among ratio ties), which cannot cycle
// and makes every solve reproducible bit for bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "facetbench/error.hpp"

namespace facetbench {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };
enum class LpStatus { optimal, infeasible, unbounded };
enum class PivotRule { bland };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct SolverConfig {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  // Priority weight on the sign-pattern term of the signed-slack program.
  double priority_weight = 10000.0;
  // Big-M for the literal mixed-integer form: factor x max output value.
  double big_m_factor = 10.0;
  PivotRule pivot_rule = PivotRule::bland;
  std::size_t max_iterations = 100000;
};

struct LpProblem {
  Sense sense = Sense::minimize;
  std::vector<double> cost;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> relations;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  LpProblem() = default;
  explicit LpProblem(std::size_t num_vars, Sense s = Sense::minimize)
      : sense(s), cost(num_vars, 0.0), lower(num_vars, 0.0), upper(num_vars, kInf) {}

  std::size_t num_vars() const { return cost.size(); }
  std::size_t num_rows() const { return rows.size(); }

  std::size_t add_variable(double c, double lo = 0.0, double hi = kInf) {
    cost.push_back(c);
    lower.push_back(lo);
    upper.push_back(hi);
    for (auto& r : rows) r.push_back(0.0);
    return cost.size() - 1;
  }

  void add_row(std::vector<double> coeffs, Relation rel, double b) {
    rows.push_back(std::move(coeffs));
    relations.push_back(rel);
    rhs.push_back(b);
  }
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
  // Some nonbasic direction keeps the objective constant while moving the
  // primal point: the optimal face has dimension >= 1.
  bool alternate_optima = false;
  std::size_t iterations = 0;

  bool optimal() const { return status == LpStatus::optimal; }
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double rhs(std::size_t r) const { return at(r, n_); }
  // Objective row lives at index m_.
  double& obj(std::size_t c) { return at(m_, c); }
  double obj(std::size_t c) const { return at(m_, c); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t w = n_ + 1;
    double* prow = &a_[pr * w];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < w; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double* row = &a_[r * w];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < w; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  void drop_row(std::size_t r) {
    const std::size_t w = n_ + 1;
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * w), a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

constexpr double kPivotTol = 1e-11;

enum class PhaseResult { optimal, unbounded };

// Bland's rule on the current objective row (minimization form: the objective
// row holds reduced costs d_j; a column improves when d_j < -tol).
inline PhaseResult run_simplex(Tableau& t, const std::vector<bool>& allowed, double opt_tol,
                               std::size_t& iterations, std::size_t max_iterations) {
  for (;;) {
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (allowed[c] && t.obj(c) < -opt_tol) {
        enter = c;
        break;
      }
    }
    if (enter == t.cols()) return PhaseResult::optimal;

    double best = kInf;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a > kPivotTol) best = std::min(best, std::max(t.rhs(r), 0.0) / a);
    }
    std::size_t leave = t.rows();
    if (best < kInf) {
      const double tie = best + 1e-12 * std::max(1.0, best);
      for (std::size_t r = 0; r < t.rows(); ++r) {
        const double a = t.at(r, enter);
        if (a <= kPivotTol || std::max(t.rhs(r), 0.0) / a > tie) continue;
        if (leave == t.rows() || t.basis()[r] < t.basis()[leave]) leave = r;
      }
    }
    if (leave == t.rows()) return PhaseResult::unbounded;
    if (++iterations > max_iterations) throw SolverError("simplex: iteration limit exceeded");
    t.pivot(leave, enter);
  }
}

// Column mapping from an original variable to standard-form columns:
//   x = offset + sign * column          (single column)
//   x = column - mirror                 (free variable, split)
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  std::size_t column = 0;
  bool split = false;
  std::size_t mirror = 0;
};

}  // namespace detail

inline void check_problem(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  if (p.lower.size() != n || p.upper.size() != n)
    throw SolverError("lp: bound vectors do not match the number of variables");
  if (p.relations.size() != p.rows.size() || p.rhs.size() != p.rows.size())
    throw SolverError("lp: relation/rhs count does not match the number of rows");
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (p.rows[i].size() != n)
      throw SolverError("lp: row " + std::to_string(i) + " has " + std::to_string(p.rows[i].size()) +
                        " coefficients, expected " + std::to_string(n));
    for (double a : p.rows[i])
      if (!std::isfinite(a)) throw SolverError("lp: non-finite coefficient in row " + std::to_string(i));
    if (!std::isfinite(p.rhs[i])) throw SolverError("lp: non-finite right-hand side in row " + std::to_string(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(p.cost[j])) throw SolverError("lp: non-finite cost coefficient");
    if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]) || p.lower[j] == kInf || p.upper[j] == -kInf)
      throw SolverError("lp: invalid bounds on variable " + std::to_string(j));
  }
}

inline LpSolution solve_lp(const LpProblem& p, const SolverConfig& cfg = {}) {
  using detail::Tableau;
  check_problem(p);
  const std::size_t n = p.num_vars();
  LpSolution sol;

  for (std::size_t j = 0; j < n; ++j)
    if (p.lower[j] > p.upper[j]) return sol;  // infeasible bounds

  // 1. Substitute bounds: every original variable becomes nonnegative columns.
  std::vector<detail::VarMap> vmap(n);
  std::size_t ncols = 0;
  struct BoundRow {
    std::size_t column;
    double limit;
  };
  std::vector<BoundRow> bound_rows;
  std::vector<bool> mirror_col;
  for (std::size_t j = 0; j < n; ++j) {
    auto& v = vmap[j];
    const double lo = p.lower[j], hi = p.upper[j];
    if (std::isfinite(lo)) {
      v.offset = lo;
      v.column = ncols++;
      mirror_col.push_back(false);
      if (std::isfinite(hi)) bound_rows.push_back({v.column, hi - lo});
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.sign = -1.0;
      v.column = ncols++;
      mirror_col.push_back(false);
    } else {
      v.split = true;
      v.column = ncols++;
      v.mirror = ncols++;
      mirror_col.push_back(false);
      mirror_col.push_back(true);
    }
  }

  struct StdRow {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<StdRow> std_rows;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    StdRow row{std::vector<double>(ncols, 0.0), p.relations[i], p.rhs[i]};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = p.rows[i][j];
      if (a == 0.0) continue;
      const auto& v = vmap[j];
      row.b -= a * v.offset;
      row.a[v.column] += a * v.sign;
      if (v.split) row.a[v.mirror] -= a;
    }
    std_rows.push_back(std::move(row));
  }
  for (const auto& br : bound_rows) {
    StdRow row{std::vector<double>(ncols, 0.0), Relation::less_equal, br.limit};
    row.a[br.column] = 1.0;
    std_rows.push_back(std::move(row));
  }

  // 2. Equilibrate, orient rhs >= 0, drop empty rows.
  std::vector<StdRow> kept;
  for (auto& row : std_rows) {
    double scale = 0.0;
    for (double a : row.a) scale = std::max(scale, std::abs(a));
    if (scale == 0.0) {
      const double tol = cfg.feasibility_tol;
      const bool ok = (row.rel == Relation::less_equal && row.b >= -tol) ||
                      (row.rel == Relation::greater_equal && row.b <= tol) ||
                      (row.rel == Relation::equal && std::abs(row.b) <= tol);
      if (!ok) return sol;
      continue;
    }
    for (double& a : row.a) a /= scale;
    row.b /= scale;
    if (row.b < 0.0) {
      for (double& a : row.a) a = -a;
      row.b = -row.b;
      if (row.rel == Relation::less_equal)
        row.rel = Relation::greater_equal;
      else if (row.rel == Relation::greater_equal)
        row.rel = Relation::less_equal;
    }
    kept.push_back(std::move(row));
  }

  // 3. Columns: structural | slack/surplus | artificial.
  const std::size_t m = kept.size();
  std::size_t nslack = 0, nart = 0;
  for (const auto& row : kept) {
    if (row.rel != Relation::equal) ++nslack;
    if (row.rel != Relation::less_equal) ++nart;
  }
  const std::size_t total = ncols + nslack + nart;
  const std::size_t art_begin = ncols + nslack;
  Tableau t(m, total);
  {
    std::size_t sc = ncols, ac = art_begin;
    for (std::size_t r = 0; r < m; ++r) {
      const auto& row = kept[r];
      for (std::size_t c = 0; c < ncols; ++c) t.at(r, c) = row.a[c];
      t.rhs(r) = row.b;
      if (row.rel == Relation::less_equal) {
        t.at(r, sc) = 1.0;
        t.basis()[r] = sc++;
      } else {
        if (row.rel == Relation::greater_equal) t.at(r, sc++) = -1.0;
        t.at(r, ac) = 1.0;
        t.basis()[r] = ac++;
      }
    }
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<bool> allowed(total, true);
  if (nart > 0) {
    for (std::size_t c = 0; c <= total; ++c) t.obj(c) = 0.0;
    for (std::size_t c = art_begin; c < total; ++c) t.obj(c) = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < art_begin) continue;
      for (std::size_t c = 0; c <= total; ++c) t.obj(c) -= t.at(r, c);
    }
    auto res = detail::run_simplex(t, allowed, cfg.optimality_tol, sol.iterations, cfg.max_iterations);
    (void)res;  // phase 1 is bounded below by zero
    double bmax = 1.0;
    for (const auto& row : kept) bmax = std::max(bmax, row.b);
    if (-t.obj(total) > cfg.feasibility_tol * bmax) return sol;

    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basis()[r] < art_begin) {
        ++r;
        continue;
      }
      std::size_t pc = total;
      for (std::size_t c = 0; c < art_begin; ++c) {
        if (std::abs(t.at(r, c)) > 1e-9) {
          pc = c;
          break;
        }
      }
      if (pc == total) {
        t.drop_row(r);
      } else {
        t.pivot(r, pc);
        ++r;
      }
    }
    for (std::size_t c = art_begin; c < total; ++c) allowed[c] = false;
  }

  // Phase 2: original objective (minimization form), scaled to unit max.
  double cscale = 0.0;
  for (double c : p.cost) cscale = std::max(cscale, std::abs(c));
  if (cscale == 0.0) cscale = 1.0;
  const double dir = p.sense == Sense::minimize ? 1.0 : -1.0;
  std::vector<double> c_std(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double cj = dir * p.cost[j] / cscale;
    const auto& v = vmap[j];
    c_std[v.column] += cj * v.sign;
    if (v.split) c_std[v.mirror] -= cj;
  }
  for (std::size_t c = 0; c <= total; ++c) t.obj(c) = c < total ? c_std[c] : 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const double cb = c_std[t.basis()[r]];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= total; ++c) t.obj(c) -= cb * t.at(r, c);
  }
  if (detail::run_simplex(t, allowed, cfg.optimality_tol, sol.iterations, cfg.max_iterations) ==
      detail::PhaseResult::unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<double> xs(total, 0.0);
  std::vector<bool> basic(total, false);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    xs[t.basis()[r]] = std::max(t.rhs(r), 0.0);
    basic[t.basis()[r]] = true;
  }

  // Alternate optima: a nonbasic column with zero reduced cost that can move.
  for (std::size_t c = 0; c < art_begin && !sol.alternate_optima; ++c) {
    if (basic[c] || !allowed[c] || std::abs(t.obj(c)) > cfg.optimality_tol) continue;
    if (c < ncols && mirror_col[c] && basic[c - 1]) continue;
    if (c < ncols && c + 1 < ncols && mirror_col[c + 1] && basic[c + 1]) continue;
    double step = kInf;
    for (std::size_t r = 0; r < t.rows(); ++r)
      if (t.at(r, c) > detail::kPivotTol) step = std::min(step, t.rhs(r) / t.at(r, c));
    if (step > cfg.feasibility_tol) sol.alternate_optima = true;
  }

  sol.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = vmap[j];
    sol.x[j] = v.split ? xs[v.column] - xs[v.mirror] : v.offset + v.sign * xs[v.column];
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += p.cost[j] * sol.x[j];
  sol.objective = obj;
  sol.status = LpStatus::optimal;
  return sol;
}

// Largest violation of any constraint or bound by x (0 when feasible).
inline double max_violation(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    double lhs = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
      lhs += p.rows[i][j] * x[j];
      scale = std::max(scale, std::abs(p.rows[i][j]));
    }
    if (scale == 0.0) scale = 1.0;
    const double d = (lhs - p.rhs[i]) / scale;
    switch (p.relations[i]) {
      case Relation::less_equal: worst = std::max(worst, d); break;
      case Relation::greater_equal: worst = std::max(worst, -d); break;
      case Relation::equal: worst = std::max(worst, std::abs(d)); break;
    }
  }
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    worst = std::max(worst, p.lower[j] - x[j]);
    worst = std::max(worst, x[j] - p.upper[j]);
  }
  return worst;
}

}  // namespace facetbench
