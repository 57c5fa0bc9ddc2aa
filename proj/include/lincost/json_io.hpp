#pragma once

#include <json.hpp>

#include "lincost/basis.hpp"
#include "lincost/classic.hpp"
#include "lincost/infer.hpp"
#include "lincost/lp.hpp"
#include "lincost/pmat.hpp"

namespace lincost {

using nlohmann::json;

// AnnVec: {"x.deg2": "3/2", "c": "5"}
json annvec_to_json(const AnnVec& p);
AnnVec annvec_from_json(const json& j);

// Matrix: {rows:[...], cols:[...], entries:[[row, col, "p/q" | "*" | {aff:...}]]}
json pmat_to_json(const PMat& m);
PMat pmat_from_json(const json& j);

json report_to_json(const FunReport& r);
json classic_report_to_json(const ClassicReport& r);
json solution_to_json(const LPProblem& p, const Solution& s);

// AST dump, one object per node with a "kind" tag.
json expr_to_json(const Expr& e);

}  // namespace lincost
