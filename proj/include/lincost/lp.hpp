#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lincost/rational.hpp"

namespace lincost {

using VarId = int;

// constant + sum of coeff * var; zero coefficients are never stored.
struct LinExpr {
  Rat constant;
  std::map<VarId, Rat> terms;

  LinExpr() = default;
  explicit LinExpr(Rat c) : constant(std::move(c)) {}
  static LinExpr var(VarId v) {
    LinExpr e;
    e.terms[v] = 1;
    return e;
  }

  void add_term(VarId v, const Rat& coeff);
  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(const Rat& k);
  bool is_constant() const { return terms.empty(); }

  std::string str(const std::vector<std::string>& names) const;
};

enum class Cmp { Le, Eq, Ge };

struct Constraint {
  LinExpr lhs;
  Cmp cmp = Cmp::Le;
  LinExpr rhs;
};

struct LPProblem {
  // Variable bookkeeping: name and whether the variable is bounded below
  // by zero (the default) or free.
  std::vector<std::string> var_names;
  std::vector<bool> var_free;
  std::vector<Constraint> constraints;
  LinExpr objective;  // maximized

  VarId add_var(const std::string& name, bool free_var = false);
  void add_constraint(LinExpr lhs, Cmp cmp, LinExpr rhs);
  size_t num_vars() const { return var_names.size(); }
};

struct Solution {
  enum class Status { Optimal, Infeasible, Unbounded, Aborted };
  Status status = Status::Infeasible;
  std::map<VarId, Rat> assignment;
  Rat objective_value;
  long pivots = 0;
};

struct SolveOptions {
  // Wall-clock deadline; the solver aborts with Status::Aborted when
  // exceeded, checked between pivots. Also aborted up front when the
  // predicted tableau work clearly exceeds the remaining budget.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Two-phase primal simplex over exact rationals with Bland's rule.
// Deterministic for a fixed variable insertion order.
Solution solve(const LPProblem& p, const SolveOptions& opts = {});

// Independent exact check that an assignment satisfies every constraint
// and bound. Shares no state with the solver.
bool check_solution(const LPProblem& p, const std::map<VarId, Rat>& assignment,
                    std::string* first_violation = nullptr);

// CPLEX LP text format. Rationals with terminating decimal expansion are
// emitted as decimals; other rows are scaled to integers.
std::string export_lp(const LPProblem& p);

}  // namespace lincost
