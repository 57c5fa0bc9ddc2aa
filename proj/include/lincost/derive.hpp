#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lincost/basis.hpp"
#include "lincost/pmat.hpp"
#include "lincost/types.hpp"

namespace lincost {

// One primitive application along a derivation path, recorded for the
// structural first-use check.
struct PrimOp {
  enum class Kind { Move, Shift, Unshift, Nil, Zero, Proj, Apply };
  Kind kind{};
  std::string src, dst;  // variable roots involved (src consumed for Move/Shift)
};

struct DerivePath {
  PMat mat;
  std::vector<PrimOp> trace;  // rightmost (first-applied) primitive first
};

// Result of the syntax-directed derivation: the expression's type, one
// matrix per path to the return (S), and one per path to a scope exit or
// function argument (C).
struct DeriveResult {
  CfType type;
  std::vector<DerivePath> s_set;
  std::vector<DerivePath> c_set;
};

struct DeriveError : LangError {
  using LangError::LangError;
};

// Matrices for function-typed variables (used by the well-formedness
// checker to type captured closures). Entries may be symbolic during
// inference.
using FunMats = std::map<std::string, std::shared_ptr<const PMat>>;

// Full types (matrix included) for nested fun literals, keyed by node.
using LiteralTypes = std::map<const Expr*, CfType>;

// Runs the cost-free typing rules over a let-normal expression. Function
// types in ctx must carry their matrices. Tick is transparent. Pair
// introduction/elimination move component indices (extension to the rule
// set, flagged in reports).
DeriveResult derive(const TypeContext& ctx, const Expr& e, const Basis& basis,
                    const LiteralTypes& literal_types = {});

}  // namespace lincost
