#include <gtest/gtest.h>

#include <random>

#include "facetbench/lp.hpp"

using namespace facetbench;

TEST(Lp, SmallMaximization) {
  LpProblem lp(2, Sense::maximize);
  lp.cost = {3, 2};
  lp.add_row({1, 1}, Relation::less_equal, 4);
  lp.add_row({1, 3}, Relation::less_equal, 6);
  lp.upper[0] = 3;
  auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.objective, 11, 1e-12);
  EXPECT_NEAR(s.x[0], 3, 1e-12);
  EXPECT_NEAR(s.x[1], 1, 1e-12);
  EXPECT_FALSE(s.alternate_optima);
}

TEST(Lp, EqualityAndGreaterRows) {
  // min x + 2y, x + y = 10, x - y >= 2, y >= 1
  LpProblem lp(2, Sense::minimize);
  lp.cost = {1, 2};
  lp.add_row({1, 1}, Relation::equal, 10);
  lp.add_row({1, -1}, Relation::greater_equal, 2);
  lp.lower[1] = 1;
  auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.x[0], 9, 1e-12);
  EXPECT_NEAR(s.x[1], 1, 1e-12);
  EXPECT_NEAR(s.objective, 11, 1e-12);
}

TEST(Lp, FreeAndNonpositiveVariables) {
  // min |.|-free: max -x - y with x free, y <= 0, x - y = -3, x >= -5 via row
  LpProblem lp(2, Sense::minimize);
  lp.cost = {1, -1};
  lp.lower = {-kInf, -kInf};
  lp.upper = {kInf, 0};
  lp.add_row({1, -1}, Relation::equal, -3);
  lp.add_row({1, 0}, Relation::greater_equal, -5);
  auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  // objective x - y = -3 everywhere on the line: alternate optima.
  EXPECT_NEAR(s.objective, -3, 1e-12);
  EXPECT_TRUE(s.alternate_optima);
  EXPECT_LE(max_violation(lp, s.x), 1e-9);
}

TEST(Lp, Infeasible) {
  LpProblem lp(1, Sense::minimize);
  lp.cost = {1};
  lp.add_row({1}, Relation::greater_equal, 2);
  lp.add_row({1}, Relation::less_equal, 1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::infeasible);
}

TEST(Lp, Unbounded) {
  LpProblem lp(2, Sense::maximize);
  lp.cost = {1, 1};
  lp.add_row({1, -1}, Relation::less_equal, 1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
}

TEST(Lp, RedundantEqualities) {
  LpProblem lp(2, Sense::maximize);
  lp.cost = {1, 0};
  lp.add_row({1, 1}, Relation::equal, 2);
  lp.add_row({2, 2}, Relation::equal, 4);
  auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.objective, 2, 1e-12);
}

TEST(Lp, AlternateOptimaFlag) {
  LpProblem lp(2, Sense::maximize);
  lp.cost = {1, 1};
  lp.add_row({1, 1}, Relation::less_equal, 1);
  EXPECT_TRUE(solve_lp(lp).alternate_optima);
  lp.cost = {1, 0.5};
  EXPECT_FALSE(solve_lp(lp).alternate_optima);
}

TEST(Lp, RejectsMalformedProblems) {
  LpProblem lp(2, Sense::minimize);
  lp.cost = {1, std::nan("")};
  EXPECT_THROW(solve_lp(lp), SolverError);
  LpProblem bad(2, Sense::minimize);
  bad.rows.push_back({1});
  bad.relations.push_back(Relation::equal);
  bad.rhs.push_back(1);
  EXPECT_THROW(solve_lp(bad), SolverError);
}

TEST(Lp, DeterministicAcrossCalls) {
  LpProblem lp(3, Sense::maximize);
  lp.cost = {1, 1, 1};
  lp.add_row({1, 1, 1}, Relation::less_equal, 3);
  lp.add_row({1, 0, 1}, Relation::less_equal, 2);
  auto a = solve_lp(lp), b = solve_lp(lp);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.iterations, b.iterations);
}

namespace {

// Brute force over all vertices of {x >= 0, A x <= b} in two dimensions.
double vertex_oracle(const std::vector<std::array<double, 3>>& rows, double c0, double c1) {
  std::vector<std::array<double, 3>> lines = rows;
  lines.push_back({-1, 0, 0});
  lines.push_back({0, -1, 0});
  double best = kInf;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& a = lines[i];
      const auto& b = lines[j];
      const double det = a[0] * b[1] - a[1] * b[0];
      if (std::abs(det) < 1e-12) continue;
      const double x = (a[2] * b[1] - a[1] * b[2]) / det;
      const double y = (a[0] * b[2] - a[2] * b[0]) / det;
      bool ok = true;
      for (const auto& l : lines)
        if (l[0] * x + l[1] * y > l[2] + 1e-9) ok = false;
      if (ok) best = std::min(best, c0 * x + c1 * y);
    }
  }
  return best;
}

}  // namespace

TEST(LpProperty, MatchesVertexEnumerationIn2D) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> coef(0.5, 10.0), cost(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::array<double, 3>> rows;
    LpProblem lp(2, Sense::minimize);
    lp.cost = {cost(gen), cost(gen)};
    for (int r = 0; r < 4; ++r) {
      std::array<double, 3> row{coef(gen), coef(gen), coef(gen) * 5};
      rows.push_back(row);
      lp.add_row({row[0], row[1]}, Relation::less_equal, row[2]);
    }
    auto s = solve_lp(lp);
    ASSERT_TRUE(s.optimal()) << trial;
    EXPECT_NEAR(s.objective, vertex_oracle(rows, lp.cost[0], lp.cost[1]), 1e-9) << trial;
    EXPECT_LE(max_violation(lp, s.x), 1e-9);
  }
}

TEST(LpProperty, SolutionsAreFeasibleOnRandomEqualitySystems) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(1.0, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 6;
    std::vector<double> x0(n);
    for (auto& v : x0) v = u(gen) / 10;
    LpProblem lp(n, Sense::maximize);
    for (auto& c : lp.cost) c = u(gen) - 50;
    for (int r = 0; r < 3; ++r) {
      std::vector<double> row(n);
      double b = 0;
      for (std::size_t j = 0; j < n; ++j) b += (row[j] = u(gen)) * x0[j];
      lp.add_row(std::move(row), r == 0 ? Relation::equal : Relation::less_equal, b);
    }
    for (auto& hi : lp.upper) hi = 50;
    auto s = solve_lp(lp);
    ASSERT_TRUE(s.optimal());
    EXPECT_LE(max_violation(lp, s.x), 1e-7);
    double at_x0 = 0;
    for (std::size_t j = 0; j < n; ++j) at_x0 += lp.cost[j] * x0[j];
    EXPECT_GE(s.objective, at_x0 - 1e-7);
  }
}
