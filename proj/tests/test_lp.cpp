#include <doctest.h>

#include "lincost/json_io.hpp"
#include "lincost/lp.hpp"
#include "testutil.hpp"

using namespace lincost;
using namespace lincost::testutil;

TEST_CASE("maximize x subject to x <= 3") {
  LPProblem p;
  VarId x = p.add_var("x");
  p.add_constraint(LinExpr::var(x), Cmp::Le, LinExpr(Rat(3)));
  p.objective = LinExpr::var(x);
  Solution s = solve(p);
  REQUIRE(s.status == Solution::Status::Optimal);
  CHECK(s.assignment.at(x) == 3);
  CHECK(s.objective_value == 3);
}

TEST_CASE("x >= 1 with x <= 0 is infeasible") {
  LPProblem p;
  VarId x = p.add_var("x");
  p.add_constraint(LinExpr::var(x), Cmp::Ge, LinExpr(Rat(1)));
  p.add_constraint(LinExpr::var(x), Cmp::Le, LinExpr(Rat(0)));
  p.objective = LinExpr::var(x);
  CHECK(solve(p).status == Solution::Status::Infeasible);
}

TEST_CASE("an uncapped objective is unbounded") {
  LPProblem p;
  VarId x = p.add_var("x");
  p.objective = LinExpr::var(x);
  CHECK(solve(p).status == Solution::Status::Unbounded);
}

TEST_CASE("equalities, free variables and rational coefficients") {
  // max y  s.t.  y = x/3 - 2, x <= 30, x free
  LPProblem p;
  VarId x = p.add_var("x", true);
  VarId y = p.add_var("y");
  LinExpr rhs;
  rhs.add_term(x, Rat(1, 3));
  rhs.constant = Rat(-2);
  p.add_constraint(LinExpr::var(y), Cmp::Eq, rhs);
  p.add_constraint(LinExpr::var(x), Cmp::Le, LinExpr(Rat(30)));
  p.objective = LinExpr::var(y);
  Solution s = solve(p);
  REQUIRE(s.status == Solution::Status::Optimal);
  CHECK(s.assignment.at(x) == 30);
  CHECK(s.assignment.at(y) == 8);
  std::string why;
  CHECK(check_solution(p, s.assignment, &why));
}

TEST_CASE("free variables may go negative") {
  LPProblem p;
  VarId x = p.add_var("x", true);
  p.add_constraint(LinExpr::var(x), Cmp::Le, LinExpr(Rat(-5)));
  p.objective = LinExpr::var(x);
  Solution s = solve(p);
  REQUIRE(s.status == Solution::Status::Optimal);
  CHECK(s.assignment.at(x) == -5);
}

TEST_CASE("random LPs: optimal assignments verify exactly and deterministically") {
  auto g = rng();
  std::uniform_int_distribution<int> dim(1, 5), rows(1, 8), coeff(-4, 4), rhsv(0, 12);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LPProblem p;
    int n = dim(g);
    for (int i = 0; i < n; ++i) p.add_var("x" + std::to_string(i), i % 3 == 2);
    int m = rows(g);
    for (int i = 0; i < m; ++i) {
      LinExpr e;
      for (int j = 0; j < n; ++j) e.add_term(j, coeff(g));
      p.add_constraint(std::move(e), trial % 2 ? Cmp::Le : Cmp::Ge, LinExpr(Rat(rhsv(g))));
    }
    for (int j = 0; j < n; ++j) p.objective.add_term(j, coeff(g));
    Solution s1 = solve(p);
    Solution s2 = solve(p);
    CHECK(s1.status == s2.status);
    if (s1.status == Solution::Status::Optimal) {
      ++optimal;
      std::string why;
      CHECK_MESSAGE(check_solution(p, s1.assignment, &why), why);
      CHECK(s1.assignment == s2.assignment);
      CHECK(s1.objective_value == s2.objective_value);
      // byte-identical serialized solutions
      CHECK(solution_to_json(p, s1).dump() == solution_to_json(p, s2).dump());
    }
  }
  CHECK(optimal > 50);  // the generator finds plenty of solvable instances
}

TEST_CASE("duality spot-check on canonical-form LPs") {
  // primal: max c'x st Ax <= b, x >= 0 (b >= 0 so the origin is feasible)
  // dual:   min b'y st A'y >= c, y >= 0
  auto g = rng();
  std::uniform_int_distribution<int> dim(1, 4), coeff(-3, 5), bval(0, 10);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int n = dim(g), m = dim(g);
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(n));
    std::vector<Rat> b(m), c(n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = coeff(g);
    for (int i = 0; i < m; ++i) b[i] = bval(g);
    for (int j = 0; j < n; ++j) c[j] = coeff(g);

    LPProblem primal;
    for (int j = 0; j < n; ++j) primal.add_var("x" + std::to_string(j));
    for (int i = 0; i < m; ++i) {
      LinExpr e;
      for (int j = 0; j < n; ++j) e.add_term(j, a[i][j]);
      primal.add_constraint(std::move(e), Cmp::Le, LinExpr(b[i]));
    }
    for (int j = 0; j < n; ++j) primal.objective.add_term(j, c[j]);

    LPProblem dual;
    for (int i = 0; i < m; ++i) dual.add_var("y" + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      LinExpr e;
      for (int i = 0; i < m; ++i) e.add_term(i, a[i][j]);
      dual.add_constraint(std::move(e), Cmp::Ge, LinExpr(c[j]));
    }
    for (int i = 0; i < m; ++i) dual.objective.add_term(i, -b[i]);  // max -b'y

    Solution sp = solve(primal);
    Solution sd = solve(dual);
    if (sp.status == Solution::Status::Optimal) {
      REQUIRE(sd.status == Solution::Status::Optimal);
      CHECK(sp.objective_value == -sd.objective_value);
      ++checked;
    } else if (sp.status == Solution::Status::Unbounded) {
      CHECK(sd.status == Solution::Status::Infeasible);
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("export_lp golden single-variable problem") {
  LPProblem p;
  VarId x = p.add_var("x");
  p.add_constraint(LinExpr::var(x), Cmp::Le, LinExpr(Rat(3)));
  p.objective = LinExpr::var(x);
  std::string text = export_lp(p);
  CHECK(text ==
        "Maximize\n"
        " obj: x\n"
        "Subject To\n"
        " c0: x <= 3\n"
        "Bounds\n"
        "End\n");
  // byte-stable across runs
  CHECK(export_lp(p) == text);
}

TEST_CASE("export_lp scales non-terminating rationals to integers") {
  LPProblem p;
  VarId x = p.add_var("x");
  VarId y = p.add_var("y");
  LinExpr e;
  e.add_term(x, Rat(1, 3));
  e.add_term(y, Rat(1, 2));
  p.add_constraint(std::move(e), Cmp::Le, LinExpr(Rat(5)));
  p.objective = LinExpr::var(x);
  std::string text = export_lp(p);
  // the 1/3 row is scaled by 6: 2x + 3y <= 30
  CHECK(text.find(" c0: 2 x + 3 y <= 30\n") != std::string::npos);
  // scaling preserves the solution set
  LPProblem q = p;
  q.constraints.clear();
  LinExpr scaled;
  scaled.add_term(x, 2);
  scaled.add_term(y, 3);
  q.add_constraint(std::move(scaled), Cmp::Le, LinExpr(Rat(30)));
  Solution sp = solve(p), sq = solve(q);
  REQUIRE(sp.status == Solution::Status::Optimal);
  CHECK(sp.objective_value == sq.objective_value);
}

TEST_CASE("export_lp renders terminating rationals as decimals") {
  LPProblem p;
  VarId x = p.add_var("x");
  LinExpr e;
  e.add_term(x, Rat(3, 4));
  p.add_constraint(std::move(e), Cmp::Ge, LinExpr(Rat(-7, 2)));
  std::string text = export_lp(p);
  CHECK(text.find("0.75 x >= -3.5") != std::string::npos);
}

TEST_CASE("empty objective renders as 0") {
  LPProblem p;
  p.add_var("x");
  std::string text = export_lp(p);
  CHECK(text.find(" obj: 0\n") != std::string::npos);
}

TEST_CASE("solver respects deadlines") {
  LPProblem p;
  for (int i = 0; i < 40; ++i) p.add_var("x" + std::to_string(i));
  auto g = rng();
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int i = 0; i < 60; ++i) {
    LinExpr e;
    for (int j = 0; j < 40; ++j) e.add_term(j, coeff(g));
    p.add_constraint(std::move(e), Cmp::Le, LinExpr(Rat(10)));
  }
  for (int j = 0; j < 40; ++j) p.objective.add_term(j, 1);
  SolveOptions opts;
  opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK(solve(p, opts).status == Solution::Status::Aborted);
}
