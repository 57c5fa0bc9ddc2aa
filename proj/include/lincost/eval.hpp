#pragma once

#include "lincost/ast.hpp"

namespace lincost {

struct EvalError : LangError {
  using LangError::LangError;
};
struct BudgetExceeded : EvalError {
  BudgetExceeded() : EvalError("evaluation step budget exceeded") {}
};

inline constexpr long kDefaultStepBudget = 1000000;

// Big-step evaluation. `budget` bounds the number of rule applications;
// exceeding it raises BudgetExceeded rather than silently truncating.
ValuePtr evaluate(const Env& env, const Expr& e, long budget = kDefaultStepBudget);

// Like evaluate but also accumulates the net cost of tick expressions.
std::pair<ValuePtr, Rat> evaluate_with_cost(const Env& env, const Expr& e,
                                            long budget = kDefaultStepBudget);

// Applies a closure value to an argument.
ValuePtr apply_closure(const ValuePtr& f, const ValuePtr& arg,
                       long budget = kDefaultStepBudget);

}  // namespace lincost
