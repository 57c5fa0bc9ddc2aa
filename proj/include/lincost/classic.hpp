#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lincost/basis.hpp"
#include "lincost/infer.hpp"
#include "lincost/lp.hpp"
#include "lincost/types.hpp"

namespace lincost {

enum class ClassicMode { Costful, CostFree };

// Signature annotation slots of one typing instance: LP variables for the
// argument and return index sets plus the two constants.
struct ClassicSig {
  std::map<Index, VarId> in_anns;   // a-relative indices of the argument type
  VarId in_const = -1;
  std::map<Index, VarId> out_anns;  // r-relative indices of the return type
  VarId out_const = -1;
};

enum class ClassicStatus { Solved, Infeasible, Unbounded, Aborted, Error };

struct ClassicReport {
  std::string name;
  ClassicMode mode = ClassicMode::CostFree;
  ClassicStatus status = ClassicStatus::Error;
  int constraint_count = 0;  // emitted constraints including retyping cascades
  int instance_count = 0;    // typings performed (the cascade size)
  AnnVec in_anns, out_anns;  // solved signature (a-/r-relative slots plus c)
  LpStats lp;
  double gen_secs = 0, solve_secs = 0;
  std::vector<std::string> diagnostics;
};

struct ClassicObjective {
  enum class Kind {
    MaximizeOutput,  // pin the input annotation, maximize weighted output
    MinimizeInput,   // minimize weighted input potential
    MaximizeInput,   // maximize input potential (caps prove forced zeros)
  };
  Kind kind = Kind::MinimizeInput;
  AnnVec pinned_input;          // MaximizeOutput: input slots (a-relative + c)
  bool pin_output_to_input = false;  // force out slot = in slot per level
  bool require_nonzero_realloc = false;  // adds sum(out list anns) >= 1
};

struct ClassicOptions {
  ClassicObjective objective;
  bool memoize_retypings = false;  // ablation; default off reproduces the cascade
  std::optional<std::chrono::steady_clock::time_point> deadline;
  bool skip_solve = false;  // constraint counting only
};

// The prior cost-free inference algorithm: annotated list types, full
// sharing via splits, tick charging in Costful mode, and the call-site
// retyping cascade. Recursive calls equate with the signature at the base
// level (modulo constant potential) and otherwise split off a cost-free
// excess typed one level lower; every external call retypes its callee
// afresh.
ClassicReport classic_infer(const Program& prog, const std::string& fname,
                            const Basis& basis, ClassicMode mode,
                            const ClassicOptions& opts = {});

inline int classic_constraint_count(const ClassicReport& r) {
  return r.constraint_count;
}

}  // namespace lincost
