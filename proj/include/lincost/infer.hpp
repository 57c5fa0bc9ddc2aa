#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lincost/derive.hpp"
#include "lincost/lp.hpp"
#include "lincost/pmat.hpp"
#include "lincost/types.hpp"

namespace lincost {

enum class FunStatus { Checked, Inferred, Infeasible, Nonlinear };

std::string status_str(FunStatus s);

struct LpStats {
  int vars = 0;
  int constraints = 0;
  std::string solve_state;  // optimal / infeasible / unbounded / aborted / none
};

struct FunReport {
  std::string name;
  FunStatus status = FunStatus::Infeasible;
  std::shared_ptr<const PMat> matrix;  // concrete after Checked/Inferred
  int constraint_count = 0;            // recorded scalar inequalities
  bool linear = true;
  bool uses_pair_indices = false;      // pair index extension in play
  LpStats lp;
  double gen_secs = 0, solve_secs = 0;
  std::vector<std::string> diagnostics;
};

// Inequality families of rule M-Fun for one function: (i) the paths bound
// the annotated matrix, (ii) captured variables keep non-negative rows,
// (iii) scope-exit and argument matrices stay non-negative. Returns the
// recorded inequalities after havoc filtering and after dropping pairs that
// hold trivially; duplicates are collapsed.
struct FunConstraints {
  std::vector<ScalarIneq> ineqs;
  std::vector<std::string> havoc_left;  // unsatisfiable-as-stated reports
  bool uses_pair_indices = false;
};

FunConstraints fun_constraints(const FunDef& f, const PMat& m, const Basis& basis,
                               const FunMats& fun_mats);

// Objective weights for inference. Unknowns sit in the degree block and
// the const row; the const column is pinned (c->c is 1, degrees take no
// potential from the constant), which keeps constant potential exactly
// conserved and keeps compositions of one symbolic matrix with itself
// linear. Entries into r-rows get weight degree_scale ^ (level(row) +
// level(col)); deg->const entries get crow_weight so they settle at their
// upper bounds instead of wandering (they may legitimately be negative,
// e.g. for list-lengthening functions).
struct InferOptions {
  long degree_scale = 10;
  Rat crow_weight = Rat(1);
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Checks a concrete matrix against a function: every generated inequality
// must hold under exact arithmetic.
FunReport check_function(const Program& prog, const std::string& fname,
                         const PMat& m, const Basis& basis);

// Infers a matrix for fname by LP, assuming every callee in fun_mats is
// already concrete. Fresh unknowns fill a-indices x r-indices plus the
// constant row/column.
FunReport infer_function(const Program& prog, const std::string& fname,
                         const Basis& basis, const FunMats& fun_mats,
                         const InferOptions& opts = {});

// Builds the inference LP for fname without solving (for export).
LPProblem inference_lp(const Program& prog, const std::string& fname,
                       const Basis& basis, const FunMats& fun_mats,
                       const InferOptions& opts = {});

// Whole-program inference: call-graph SCC condensation in topological
// order; singleton SCCs one at a time, mutual-recursion SCCs jointly with
// all member matrices symbolic. On a nonlinear joint system the members
// degrade to the always-sound zero-reallocation matrix with a warning.
std::map<std::string, FunReport> infer_program(const Program& prog, const Basis& basis,
                                               const InferOptions& opts = {});

// The always-sound fallback: identity on c, zero elsewhere.
PMat zero_realloc_matrix(const FunDef& f, const Basis& basis);

// First-order functions whose captured function variables all resolve to
// named functions are analyzable; higher-order templates are handled by
// macro-expansion at call sites instead and are skipped by infer_program.
bool analyzable(const FunDef& f);

}  // namespace lincost
