#include "lincost/infer.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lincost {

std::string status_str(FunStatus s) {
  switch (s) {
    case FunStatus::Checked: return "checked";
    case FunStatus::Inferred: return "inferred";
    case FunStatus::Infeasible: return "infeasible";
    case FunStatus::Nonlinear: return "nonlinear";
  }
  return "?";
}

namespace {

const std::string kRet = "r";
const std::string kArg = "a";

Affine to_affine_form(const Scalar& s) {
  if (s.is_affine()) return s.affine();
  Affine a;
  a.constant = s.rational();
  return a;
}

// rhs - lhs as an affine expression (the ">= 0" residual).
Affine residual(const ScalarIneq& iq) {
  Affine r = to_affine_form(iq.rhs);
  Affine l = to_affine_form(iq.lhs);
  r.constant -= l.constant;
  for (const auto& [id, c] : l.coeffs) {
    Rat& slot = r.coeffs[id];
    slot -= c;
    if (slot == 0) r.coeffs.erase(id);
  }
  return r;
}

IndexSet captured_indices(const FunDef& f, const Basis& basis) {
  IndexSet out;
  for (const auto& [name, t] : f.captured)
    for (const auto& i : indices(t, basis)) out.insert(i.with_prefix(name));
  return out;
}

bool any_pair_index(const IndexSet& s) {
  for (const auto& i : s)
    if (i.path.size() > 1) return true;
  return false;
}

}  // namespace

namespace {

bool type_contains_fun(const CfType& t) {
  if (t.kind == CfType::Kind::Fun) return true;
  if (t.a && type_contains_fun(*t.a)) return true;
  if (t.b && type_contains_fun(*t.b)) return true;
  return false;
}

}  // namespace

bool analyzable(const FunDef& f) {
  if (type_contains_fun(f.arg)) return false;
  for (const auto& [name, t] : f.captured)
    if (type_contains_fun(t) && !f.captured_funs.count(name)) return false;
  return true;
}

PMat zero_realloc_matrix(const FunDef& f, const Basis& basis) {
  PMat m;
  m.rows = prefixed(kRet, indices(f.ret, basis));
  m.rows.insert(Index::constant());
  m.cols = prefixed(kArg, indices(f.arg, basis));
  m.cols.insert(Index::constant());
  m.entries[{Index::constant(), Index::constant()}] = Scalar(Rat(1));
  return m;
}

namespace {

struct AnalysisEnv {
  const Program* prog;
  Basis basis;
  const FunMats* mats;  // registry key -> matrix
};

std::shared_ptr<const PMat> mat_for(const AnalysisEnv& env, const std::string& key) {
  auto it = env.mats->find(key);
  return it == env.mats->end() ? nullptr : it->second;
}

// Typing context of f's body with matrices attached, plus literal types.
void build_ctx(const AnalysisEnv& env, const FunDef& f,
               std::shared_ptr<const PMat> self_mat, TypeContext& ctx, LiteralTypes& lits) {
  for (const auto& [name, t] : f.captured) {
    CfType ct = t;
    auto kit = f.captured_funs.find(name);
    if (ct.kind == CfType::Kind::Fun && kit != f.captured_funs.end())
      ct.mat = mat_for(env, kit->second);
    ctx[name] = std::move(ct);
  }
  ctx[f.self_name] = CfType::fun(f.arg, f.ret, self_mat);
  ctx[f.arg_name] = f.arg;
  for (const auto& g : env.prog->funs)
    lits[g.fun.get()] = CfType::fun(g.arg, g.ret, mat_for(env, g.name));
}

FunConstraints fun_constraints_env(const AnalysisEnv& env, const FunDef& f, const PMat& m) {
  TypeContext ctx;
  LiteralTypes lits;
  auto self = std::make_shared<PMat>(m);
  build_ctx(env, f, self, ctx, lits);

  DeriveResult dr = derive(ctx, *f.body, env.basis, lits);

  const Basis& basis = env.basis;
  IndexSet arg_idx = prefixed(f.arg_name, indices(f.arg, basis));
  IndexSet ret_idx = prefixed(kRet, indices(f.ret, basis));
  IndexSet xrc = set_union(arg_idx, ret_idx);
  xrc.insert(Index::constant());

  TypeContext outer_ctx = f.captured;
  outer_ctx[f.arg_name] = f.arg;
  IndexSet ctx_cols = context_indices(outer_ctx, basis);

  IndexSet gamma_idx = captured_indices(f, basis);
  PMat zero_gamma = zero_map(gamma_idx);

  IndexSet ambient = set_union(ctx_cols, ret_idx);
  PMat keep_xrc = proj(xrc, ambient);
  PMat mv_xa = move(f.arg_name, kArg, indices(f.arg, basis));
  PMat rhs_i = compose(keep_xrc, compose(m, mv_xa));

  FunConstraints out;
  out.uses_pair_indices = any_pair_index(ctx_cols) || any_pair_index(ret_idx);
  auto record = [&](LeqResult&& lr) {
    for (auto& iq : lr.ineqs) out.ineqs.push_back(std::move(iq));
    for (auto& iq : lr.havoc_left)
      out.havoc_left.push_back(iq.tag + " havoc at " + iq.row.str() + "," + iq.col.str());
  };

  for (size_t si = 0; si < dr.s_set.size(); ++si) {
    const PMat& s = dr.s_set[si].mat;
    PMat lhs = compose(keep_xrc, compose(s, zero_gamma));
    record(leq_constraints(rhs_i, lhs, xrc, ctx_cols, "S" + std::to_string(si) + "(i)"));
    if (!gamma_idx.empty()) {
      PMat lhs2 = compose(s, zero_gamma);
      record(leq_constraints(zero_map(gamma_idx), lhs2, gamma_idx, ctx_cols,
                             "S" + std::to_string(si) + "(ii)"));
    }
  }
  for (size_t ci = 0; ci < dr.c_set.size(); ++ci) {
    PMat lhs = compose(dr.c_set[ci].mat, zero_gamma);
    record(leq_constraints(zero_map(lhs.rows), lhs, lhs.rows, ctx_cols,
                           "C" + std::to_string(ci) + "(iii)"));
  }
  return out;
}

struct SymbolicMat {
  PMat mat;
  struct Cell {
    Index row, col;
    UnknownId id;
  };
  std::vector<Cell> cells;
};

SymbolicMat make_symbolic(const FunDef& f, const Basis& basis) {
  // Unknowns fill the degree block and the deg->const row. The constant
  // column is pinned: c->c is exactly 1 and degree rows take nothing from
  // the constant. That matches how function application threads constant
  // potential and keeps a function's own matrix composable with itself
  // without quadratic terms.
  SymbolicMat sm;
  IndexSet rows = prefixed(kRet, indices(f.ret, basis));
  rows.insert(Index::constant());
  IndexSet cols = prefixed(kArg, indices(f.arg, basis));
  cols.insert(Index::constant());
  sm.mat.rows = rows;
  sm.mat.cols = cols;
  UnknownId next = 0;
  for (const auto& r : rows)
    for (const auto& c : cols) {
      if (c.is_const()) continue;
      UnknownId id = next++;
      sm.mat.entries[{r, c}] = Scalar::unknown(id);
      sm.cells.push_back({r, c, id});
    }
  sm.mat.entries[{Index::constant(), Index::constant()}] = Scalar(Rat(1));
  return sm;
}

// Weight for maximizing one matrix cell, per the configured objective.
Rat cell_weight(const SymbolicMat::Cell& cell, const InferOptions& opts) {
  if (cell.row.is_const()) return opts.crow_weight;
  Rat w(1);
  for (int i = 0; i < cell.row.level + cell.col.level; ++i) w *= opts.degree_scale;
  return w;
}

struct BuiltLp {
  LPProblem lp;
  std::map<UnknownId, VarId> var_of;
  bool infeasible_concrete = false;
  std::string concrete_violation;
};

BuiltLp build_lp(const FunConstraints& fc, const SymbolicMat& sm, const InferOptions& opts) {
  BuiltLp b;
  for (const auto& cell : sm.cells)
    b.var_of[cell.id] =
        b.lp.add_var("M_" + cell.row.str() + "_" + cell.col.str(), /*free_var=*/true);
  for (const auto& iq : fc.ineqs) {
    Affine res = residual(iq);
    if (res.coeffs.empty()) {
      if (res.constant < 0 && !b.infeasible_concrete) {
        b.infeasible_concrete = true;
        b.concrete_violation = iq.tag + " at " + iq.row.str() + "," + iq.col.str() + ": " +
                               iq.lhs.str() + " <= " + iq.rhs.str();
      }
      continue;
    }
    LinExpr lhs;
    lhs.constant = res.constant;
    for (const auto& [id, c] : res.coeffs) lhs.add_term(b.var_of.at(id), c);
    b.lp.add_constraint(std::move(lhs), Cmp::Ge, LinExpr(Rat(0)));
  }
  for (const auto& cell : sm.cells) {
    Rat w = cell_weight(cell, opts);
    if (w != 0) b.lp.objective.add_term(b.var_of.at(cell.id), w);
  }
  return b;
}

PMat substitute_solution(const SymbolicMat& sm, const BuiltLp& b, const Solution& sol) {
  PMat out;
  out.rows = sm.mat.rows;
  out.cols = sm.mat.cols;
  for (const auto& [rc, entry] : sm.mat.entries) {
    if (entry.is_rational()) {
      if (!entry.is_zero()) out.entries[rc] = entry;
      continue;
    }
    UnknownId id = entry.affine().coeffs.begin()->first;
    auto it = sol.assignment.find(b.var_of.at(id));
    Rat v = it == sol.assignment.end() ? Rat(0) : it->second;
    if (v != 0) out.entries[rc] = Scalar(v);
  }
  return out;
}

FunStatus evaluate_concrete(const FunConstraints& fc, std::vector<std::string>& diags) {
  FunStatus status = FunStatus::Checked;
  for (const auto& iq : fc.ineqs) {
    if (!iq.lhs.is_rational() || !iq.rhs.is_rational())
      throw LangError("expected concrete inequality");
    if (!(iq.lhs.rational() <= iq.rhs.rational())) {
      status = FunStatus::Infeasible;
      diags.push_back("violated " + iq.tag + " at " + iq.row.str() + "," + iq.col.str() +
                      ": " + iq.lhs.str() + " <= " + iq.rhs.str());
    }
  }
  for (const auto& h : fc.havoc_left) {
    status = FunStatus::Infeasible;
    diags.push_back("havoc on the left: " + h);
  }
  return status;
}

// --- call graph SCCs --------------------------------------------------------

std::vector<std::vector<std::string>> scc_topological(const Program& prog) {
  // Tarjan; emits SCCs in reverse topological order of the callee graph,
  // i.e. callees before callers.
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& f : prog.funs) edges[f.name] = f.callees;
  std::map<std::string, int> index, low;
  std::map<std::string, bool> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> sccs;
  int counter = 0;
  std::function<void(const std::string&)> strongconnect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& w : edges[v]) {
      if (!edges.count(w)) continue;
      if (!index.count(w)) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> scc;
      while (true) {
        std::string w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc.push_back(w);
        if (w == v) break;
      }
      sccs.push_back(std::move(scc));
    }
  };
  for (const auto& f : prog.funs)
    if (!index.count(f.name)) strongconnect(f.name);
  return sccs;
}

FunReport infer_one(const AnalysisEnv& env, const FunDef& f, const InferOptions& opts) {
  using Clock = std::chrono::steady_clock;
  FunReport rep;
  rep.name = f.name;
  auto t0 = Clock::now();
  SymbolicMat sm = make_symbolic(f, env.basis);
  FunConstraints fc;
  try {
    fc = fun_constraints_env(env, f, sm.mat);
  } catch (const NonlinearTerm& nl) {
    rep.status = FunStatus::Nonlinear;
    rep.linear = false;
    rep.diagnostics.push_back(nl.what());
    return rep;
  }
  rep.constraint_count = static_cast<int>(fc.ineqs.size());
  rep.uses_pair_indices = fc.uses_pair_indices;
  for (const auto& h : fc.havoc_left) rep.diagnostics.push_back("havoc on the left: " + h);
  if (!fc.havoc_left.empty()) {
    rep.status = FunStatus::Infeasible;
    return rep;
  }
  BuiltLp b = build_lp(fc, sm, opts);
  rep.gen_secs = std::chrono::duration<double>(Clock::now() - t0).count();
  rep.lp.vars = static_cast<int>(b.lp.num_vars());
  rep.lp.constraints = static_cast<int>(b.lp.constraints.size());
  if (b.infeasible_concrete) {
    rep.status = FunStatus::Infeasible;
    rep.lp.solve_state = "none";
    rep.diagnostics.push_back("violated concrete inequality: " + b.concrete_violation);
    return rep;
  }
  auto t1 = Clock::now();
  SolveOptions sopts;
  sopts.deadline = opts.deadline;
  Solution sol = solve(b.lp, sopts);
  if (sol.status == Solution::Status::Unbounded) {
    // Paths through empty-list returns leave entries unconstrained above;
    // cap them so a concrete witness still comes out.
    rep.diagnostics.push_back("objective unbounded; matrix entries capped at 10^6");
    for (VarId v = 0; v < static_cast<VarId>(b.lp.num_vars()); ++v)
      b.lp.add_constraint(LinExpr::var(v), Cmp::Le, LinExpr(Rat(1000000)));
    sol = solve(b.lp, sopts);
  }
  rep.solve_secs = std::chrono::duration<double>(Clock::now() - t1).count();
  switch (sol.status) {
    case Solution::Status::Optimal: {
      rep.lp.solve_state = "optimal";
      rep.matrix = std::make_shared<PMat>(substitute_solution(sm, b, sol));
      rep.status = FunStatus::Inferred;
      break;
    }
    case Solution::Status::Infeasible:
      rep.lp.solve_state = "infeasible";
      rep.status = FunStatus::Infeasible;
      break;
    case Solution::Status::Unbounded:
      rep.lp.solve_state = "unbounded";
      rep.status = FunStatus::Infeasible;
      rep.diagnostics.push_back("objective unbounded after capping");
      break;
    case Solution::Status::Aborted:
      rep.lp.solve_state = "aborted";
      rep.status = FunStatus::Infeasible;
      rep.diagnostics.push_back("solver aborted");
      break;
  }
  return rep;
}

}  // namespace

FunConstraints fun_constraints(const FunDef& f, const PMat& m, const Basis& basis,
                               const FunMats& fun_mats) {
  // Standalone entry: callers supply matrices keyed by registry name.
  Program dummy;
  AnalysisEnv env{&dummy, basis, &fun_mats};
  return fun_constraints_env(env, f, m);
}

FunReport check_function(const Program& prog, const std::string& fname, const PMat& m,
                         const Basis& basis) {
  const FunDef* f = prog.find(fname);
  if (!f) throw LangError("no function named '" + fname + "'");

  // Concrete matrices for everything fname depends on.
  FunMats mats;
  auto sccs = scc_topological(prog);
  for (const auto& scc : sccs) {
    bool has_target = std::find(scc.begin(), scc.end(), fname) != scc.end();
    for (const auto& name : scc) {
      if (name == fname) continue;
      const FunDef* g = prog.find(name);
      if (has_target) {
        mats[name] = std::make_shared<PMat>(zero_realloc_matrix(*g, basis));
        continue;
      }
      if (!analyzable(*g)) continue;
      AnalysisEnv env{&prog, basis, &mats};
      FunReport r = infer_one(env, *g, InferOptions{});
      mats[name] =
          r.matrix ? r.matrix : std::make_shared<PMat>(zero_realloc_matrix(*g, basis));
    }
    if (has_target) break;
  }

  AnalysisEnv env{&prog, basis, &mats};
  FunReport rep;
  rep.name = fname;
  try {
    FunConstraints fc = fun_constraints_env(env, *f, m);
    rep.constraint_count = static_cast<int>(fc.ineqs.size());
    rep.uses_pair_indices = fc.uses_pair_indices;
    rep.lp.solve_state = "none";
    rep.status = evaluate_concrete(fc, rep.diagnostics);
    rep.matrix = std::make_shared<PMat>(m);
  } catch (const NonlinearTerm& nl) {
    rep.status = FunStatus::Nonlinear;
    rep.linear = false;
    rep.diagnostics.push_back(nl.what());
  }
  return rep;
}

FunReport infer_function(const Program& prog, const std::string& fname, const Basis& basis,
                         const FunMats& fun_mats, const InferOptions& opts) {
  const FunDef* f = prog.find(fname);
  if (!f) throw LangError("no function named '" + fname + "'");
  AnalysisEnv env{&prog, basis, &fun_mats};
  return infer_one(env, *f, opts);
}

LPProblem inference_lp(const Program& prog, const std::string& fname, const Basis& basis,
                       const FunMats& fun_mats, const InferOptions& opts) {
  const FunDef* f = prog.find(fname);
  if (!f) throw LangError("no function named '" + fname + "'");
  AnalysisEnv env{&prog, basis, &fun_mats};
  SymbolicMat sm = make_symbolic(*f, basis);
  FunConstraints fc = fun_constraints_env(env, *f, sm.mat);
  return build_lp(fc, sm, opts).lp;
}

std::map<std::string, FunReport> infer_program(const Program& prog, const Basis& basis,
                                               const InferOptions& opts) {
  std::map<std::string, FunReport> reports;
  FunMats mats;
  AnalysisEnv env{&prog, basis, &mats};
  for (const auto& scc : scc_topological(prog)) {
    if (scc.size() == 1 && !analyzable(*prog.find(scc[0]))) continue;
    if (scc.size() == 1) {
      const FunDef* f = prog.find(scc[0]);
      FunReport rep = infer_one(env, *f, opts);
      mats[f->name] =
          rep.matrix ? rep.matrix : std::make_shared<PMat>(zero_realloc_matrix(*f, basis));
      if (!rep.matrix)
        rep.diagnostics.push_back("callers fall back to the zero-reallocation matrix");
      reports[f->name] = std::move(rep);
      continue;
    }
    // Mutual recursion: joint analysis, every member matrix symbolic.
    std::vector<const FunDef*> members;
    for (const auto& name : scc) members.push_back(prog.find(name));
    std::map<std::string, SymbolicMat> syms;
    {
      UnknownId next = 0;
      for (const FunDef* f : members) {
        SymbolicMat sm = make_symbolic(*f, basis);
        // Re-number unknowns so ids stay distinct across members.
        for (auto& cell : sm.cells) {
          UnknownId fresh = next++;
          sm.mat.entries[{cell.row, cell.col}] = Scalar::unknown(fresh);
          cell.id = fresh;
        }
        syms.emplace(f->name, std::move(sm));
      }
    }
    for (const auto& [name, sm] : syms) mats[name] = std::make_shared<PMat>(sm.mat);
    bool nonlinear = false;
    std::string nl_diag;
    std::map<std::string, FunConstraints> fcs;
    for (const FunDef* f : members) {
      try {
        fcs[f->name] = fun_constraints_env(env, *f, syms.at(f->name).mat);
      } catch (const NonlinearTerm& nl) {
        nonlinear = true;
        nl_diag = nl.what();
        break;
      }
    }
    bool solved = false;
    std::map<UnknownId, Rat> joint_assignment;
    if (!nonlinear) {
      LPProblem lp;
      std::map<UnknownId, VarId> var_of;
      bool concrete_bad = false;
      for (const auto& [name, sm] : syms)
        for (const auto& cell : sm.cells)
          var_of[cell.id] = lp.add_var(name + ".M_" + cell.row.str() + "_" + cell.col.str());
      for (const auto& [name, fc] : fcs) {
        for (const auto& iq : fc.ineqs) {
          Affine res = residual(iq);
          if (res.coeffs.empty()) {
            if (res.constant < 0) concrete_bad = true;
            continue;
          }
          LinExpr lhs;
          lhs.constant = res.constant;
          for (const auto& [id, c] : res.coeffs) lhs.add_term(var_of.at(id), c);
          lp.add_constraint(std::move(lhs), Cmp::Ge, LinExpr(Rat(0)));
        }
      }
      for (const auto& [name, sm] : syms)
        for (const auto& cell : sm.cells) {
          Rat w = cell_weight(cell, opts);
          if (w != 0) lp.objective.add_term(var_of.at(cell.id), w);
        }
      if (!concrete_bad) {
        Solution sol = solve(lp);
        if (sol.status == Solution::Status::Optimal) {
          solved = true;
          for (const auto& [id, v] : var_of) {
            auto it = sol.assignment.find(v);
            joint_assignment[id] = it == sol.assignment.end() ? Rat(0) : it->second;
          }
        }
      }
    }
    for (const FunDef* f : members) {
      FunReport rep;
      rep.name = f->name;
      if (nonlinear) {
        rep.status = FunStatus::Inferred;
        rep.linear = false;
        rep.diagnostics.push_back("mutual recursion turned nonlinear (" + nl_diag +
                                  "); degraded to the zero-reallocation matrix");
        rep.matrix = std::make_shared<PMat>(zero_realloc_matrix(*f, basis));
      } else if (solved) {
        const SymbolicMat& sm = syms.at(f->name);
        PMat concrete;
        concrete.rows = sm.mat.rows;
        concrete.cols = sm.mat.cols;
        for (const auto& [rc, entry] : sm.mat.entries) {
          if (entry.is_rational()) {
            if (!entry.is_zero()) concrete.entries[rc] = entry;
            continue;
          }
          Rat v = joint_assignment.at(entry.affine().coeffs.begin()->first);
          if (v != 0) concrete.entries[rc] = Scalar(v);
        }
        rep.status = FunStatus::Inferred;
        rep.constraint_count = static_cast<int>(fcs.at(f->name).ineqs.size());
        rep.matrix = std::make_shared<PMat>(std::move(concrete));
      } else {
        rep.status = FunStatus::Infeasible;
        rep.diagnostics.push_back("joint mutual-recursion system unsolved; callers fall "
                                  "back to the zero-reallocation matrix");
        rep.matrix = std::make_shared<PMat>(zero_realloc_matrix(*f, basis));
      }
      mats[f->name] = rep.matrix;
      reports[f->name] = std::move(rep);
    }
  }
  return reports;
}

}  // namespace lincost
