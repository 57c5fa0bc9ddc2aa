#pragma once

#include "lincost/ast.hpp"

namespace lincost {

struct ExpandError : LangError {
  using LangError::LangError;
};

// Macro-expands applications whose argument is a statically resolved
// function: `g y` with y naming a function beta-reduces g's literal with
// the parameter substituted, so higher-order helpers like map and filter
// become first-order instances before inference. An application passing a
// function that cannot be resolved statically is an error.
ExprPtr expand_higher_order(ExprPtr root);

}  // namespace lincost
