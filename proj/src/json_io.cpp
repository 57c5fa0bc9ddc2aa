#include "lincost/json_io.hpp"

namespace lincost {

json annvec_to_json(const AnnVec& p) {
  json j = json::object();
  for (const auto& [i, v] : p.entries) j[i.str()] = rat_str(v);
  return j;
}

AnnVec annvec_from_json(const json& j) {
  AnnVec p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto q = rat_parse(it.value().get<std::string>());
    if (!q) throw LangError("bad rational '" + it.value().get<std::string>() + "'");
    p.set(index_parse(it.key()), *q);
  }
  return p;
}

json pmat_to_json(const PMat& m) {
  json rows = json::array(), cols = json::array(), entries = json::array();
  for (const auto& r : m.rows) rows.push_back(r.str());
  for (const auto& c : m.cols) cols.push_back(c.str());
  for (const auto& [rc, v] : m.entries) {
    json cell;
    if (v.is_havoc()) {
      cell = "*";
    } else if (v.is_rational()) {
      cell = rat_str(v.rational());
    } else {
      json aff = json::object();
      aff["const"] = rat_str(v.affine().constant);
      json terms = json::object();
      for (const auto& [id, c] : v.affine().coeffs) terms["u" + std::to_string(id)] = rat_str(c);
      aff["terms"] = terms;
      cell = json::object({{"aff", aff}});
    }
    entries.push_back(json::array({rc.first.str(), rc.second.str(), cell}));
  }
  return json::object({{"rows", rows}, {"cols", cols}, {"entries", entries}});
}

PMat pmat_from_json(const json& j) {
  PMat m;
  for (const auto& r : j.at("rows")) m.rows.insert(index_parse(r.get<std::string>()));
  for (const auto& c : j.at("cols")) m.cols.insert(index_parse(c.get<std::string>()));
  for (const auto& e : j.at("entries")) {
    Index r = index_parse(e.at(0).get<std::string>());
    Index c = index_parse(e.at(1).get<std::string>());
    const json& cell = e.at(2);
    if (cell.is_string()) {
      std::string s = cell.get<std::string>();
      if (s == "*") {
        m.entries[{r, c}] = Scalar::havoc();
      } else {
        auto q = rat_parse(s);
        if (!q) throw LangError("bad matrix entry '" + s + "'");
        if (*q != 0) m.entries[{r, c}] = Scalar(*q);
      }
    } else {
      throw LangError("symbolic matrix entries cannot be loaded");
    }
  }
  return m;
}

json report_to_json(const FunReport& r) {
  json j;
  j["name"] = r.name;
  j["algo"] = "new";
  j["status"] = status_str(r.status);
  j["matrix"] = r.matrix ? pmat_to_json(*r.matrix) : json(nullptr);
  j["constraints"] = r.constraint_count;
  j["linear"] = r.linear;
  if (r.uses_pair_indices) j["pair_index_extension"] = true;
  j["lp_stats"] = json::object({{"vars", r.lp.vars},
                                {"constraints", r.lp.constraints},
                                {"solve_state", r.lp.solve_state}});
  j["diagnostics"] = r.diagnostics;
  return j;
}

json classic_report_to_json(const ClassicReport& r) {
  json j;
  j["name"] = r.name;
  j["algo"] = "classic";
  switch (r.status) {
    case ClassicStatus::Solved: j["status"] = "solved"; break;
    case ClassicStatus::Infeasible: j["status"] = "infeasible"; break;
    case ClassicStatus::Unbounded: j["status"] = "unbounded"; break;
    case ClassicStatus::Aborted: j["status"] = "aborted"; break;
    case ClassicStatus::Error: j["status"] = "error"; break;
  }
  j["matrix"] = nullptr;
  j["mode"] = r.mode == ClassicMode::Costful ? "costful" : "costfree";
  j["constraints"] = r.constraint_count;
  j["instances"] = r.instance_count;
  j["in_anns"] = annvec_to_json(r.in_anns);
  j["out_anns"] = annvec_to_json(r.out_anns);
  j["lp_stats"] = json::object({{"vars", r.lp.vars},
                                {"constraints", r.lp.constraints},
                                {"solve_state", r.lp.solve_state}});
  j["diagnostics"] = r.diagnostics;
  return j;
}

json solution_to_json(const LPProblem& p, const Solution& s) {
  json j;
  switch (s.status) {
    case Solution::Status::Optimal: j["status"] = "optimal"; break;
    case Solution::Status::Infeasible: j["status"] = "infeasible"; break;
    case Solution::Status::Unbounded: j["status"] = "unbounded"; break;
    case Solution::Status::Aborted: j["status"] = "aborted"; break;
  }
  json vars = json::object();
  for (const auto& [v, val] : s.assignment) vars[p.var_names[v]] = rat_str(val);
  j["vars"] = vars;
  j["objective"] = rat_str(s.objective_value);
  return j;
}

json expr_to_json(const Expr& e) {
  json j;
  switch (e.kind) {
    case Expr::Kind::Bool:
      j["kind"] = "bool";
      j["value"] = e.bval;
      break;
    case Expr::Kind::Nil:
      j["kind"] = "nil";
      break;
    case Expr::Kind::Var:
      j["kind"] = "var";
      j["name"] = e.s1;
      break;
    case Expr::Kind::Cond:
      j["kind"] = "if";
      j["cond"] = expr_to_json(*e.a);
      j["then"] = expr_to_json(*e.b);
      j["else"] = expr_to_json(*e.c);
      break;
    case Expr::Kind::Cons:
      j["kind"] = "cons";
      j["head"] = expr_to_json(*e.a);
      j["tail"] = expr_to_json(*e.b);
      break;
    case Expr::Kind::CaseList:
      j["kind"] = "case_list";
      j["scrutinee"] = expr_to_json(*e.a);
      j["nil"] = expr_to_json(*e.b);
      j["head"] = e.s1;
      j["tail"] = e.s2;
      j["cons"] = expr_to_json(*e.c);
      break;
    case Expr::Kind::Let:
      j["kind"] = "let";
      j["name"] = e.s1;
      j["bound"] = expr_to_json(*e.a);
      j["body"] = expr_to_json(*e.b);
      break;
    case Expr::Kind::Fun:
      j["kind"] = "fun";
      j["self"] = e.s1;
      j["arg"] = e.s2;
      j["body"] = expr_to_json(*e.a);
      break;
    case Expr::Kind::App:
      j["kind"] = "app";
      j["fun"] = expr_to_json(*e.a);
      j["arg"] = expr_to_json(*e.b);
      break;
    case Expr::Kind::Tick:
      j["kind"] = "tick";
      j["cost"] = rat_str(e.cost);
      j["body"] = expr_to_json(*e.a);
      break;
    case Expr::Kind::Pair:
      j["kind"] = "pair";
      j["fst"] = expr_to_json(*e.a);
      j["snd"] = expr_to_json(*e.b);
      break;
    case Expr::Kind::CasePair:
      j["kind"] = "case_pair";
      j["scrutinee"] = expr_to_json(*e.a);
      j["fst"] = e.s1;
      j["snd"] = e.s2;
      j["body"] = expr_to_json(*e.b);
      break;
  }
  return j;
}

}  // namespace lincost
