#pragma once

#include "lincost/basis.hpp"
#include "lincost/derive.hpp"
#include "lincost/types.hpp"

namespace lincost {

// Value well-formedness: structural agreement with the type, and for
// closures the stored body must re-derive at the claimed function type
// (rule V-Fun), checking the M-Fun premises against the type's matrix.
// fun_mats supplies matrices for function-typed captured variables.
bool check_wf(const ValuePtr& v, const CfType& t, const Basis& basis,
              const FunMats& fun_mats = {});

}  // namespace lincost
