#pragma once

#include "lincost/ast.hpp"

namespace lincost {

// Rewrites an expression into let-normal form: every position the grammar
// restricts to a variable is let-bound first. Fresh names are "%n"; source
// names may not contain '%'. Binders that would shadow an in-scope name are
// renamed, so analysis contexts can key on names.
ExprPtr let_normalize(const Expr& e);

}  // namespace lincost
