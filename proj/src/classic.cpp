#include "lincost/classic.hpp"

#include <algorithm>

namespace lincost {

namespace {

using Clock = std::chrono::steady_clock;

constexpr VarId kZeroAnn = -1;  // annotation slot pinned to zero

struct GenAborted {};

// Annotation slots of one value: relative index -> LP variable (or zero).
using AnnMap = std::map<Index, VarId>;

struct Sig {
  AnnMap in, out;
  VarId in_c = kZeroAnn, out_c = kZeroAnn;
  const FunDef* fun = nullptr;
  int level = 0;
  ClassicMode mode = ClassicMode::CostFree;
};

struct ClassicGen {
  const Program* prog;
  Basis::Kind kind;
  const ClassicOptions* opts;
  Clock::time_point start = Clock::now();

  LPProblem lp;
  long emitted = 0;          // generation constraints (pins excluded)
  bool storing = true;       // beyond store_limit we only count
  long store_limit = 300000;
  int instances = 0;
  std::vector<Sig*> active;  // innermost last
  std::vector<std::unique_ptr<Sig>> owned;
  std::map<const Expr*, const FunDef*> literal_defs;
  std::map<std::tuple<const FunDef*, int, int>, Sig*> memo;

  explicit ClassicGen(const Program& p) : prog(&p) {
    for (const auto& f : p.funs) literal_defs[f.fun.get()] = &f;
  }

  Basis level_basis(int level) const {
    return kind == Basis::Kind::Polynomial ? Basis::poly(level) : Basis::exp(level);
  }
  int base_level() const { return kind == Basis::Kind::Polynomial ? 1 : 2; }
  // Highest index level present at `level`.
  int top_of(int level) const { return level; }

  void check_deadline() {
    if (opts->deadline && Clock::now() > *opts->deadline) throw GenAborted{};
  }

  LinExpr term(VarId v) { return v == kZeroAnn ? LinExpr(Rat(0)) : LinExpr::var(v); }

  void emit(LinExpr lhs, Cmp cmp, LinExpr rhs) {
    ++emitted;
    if ((emitted & 255) == 0) check_deadline();
    if (emitted > store_limit) {
      storing = false;
      lp.constraints.clear();
      return;
    }
    if (storing) lp.add_constraint(std::move(lhs), cmp, std::move(rhs));
  }

  // Every annotation variable is constrained >= 0 in the LP; the rows are
  // emitted explicitly like the rest of the generated system.
  VarId fresh(const std::string& name) {
    VarId v = lp.add_var(name);
    emit(term(v), Cmp::Ge, LinExpr(Rat(0)));
    return v;
  }

  AnnMap fresh_anns(const CfType& t, int level, const std::string& tag) {
    AnnMap m;
    for (const auto& i : indices(t, level_basis(level)))
      m[i] = fresh(tag + "." + i.str());
    return m;
  }

  // u + v = whole, splitting a variable's potential between two uses.
  std::pair<AnnMap, AnnMap> split(const AnnMap& whole, const std::string& tag) {
    AnnMap u, v;
    bool all_zero = true;
    for (const auto& [i, var] : whole)
      if (var != kZeroAnn) all_zero = false;
    if (all_zero) return {whole, whole};
    for (const auto& [i, var] : whole) {
      if (var == kZeroAnn) {
        u[i] = kZeroAnn;
        v[i] = kZeroAnn;
        continue;
      }
      u[i] = fresh(tag + ".sh1." + i.str());
      v[i] = fresh(tag + ".sh2." + i.str());
      LinExpr sum = term(u[i]);
      sum += term(v[i]);
      emit(std::move(sum), Cmp::Eq, term(var));
    }
    return {u, v};
  }

  AnnMap sub_component(const AnnMap& m, const std::string& seg) {
    AnnMap out;
    for (const auto& [i, var] : m) {
      if (i.path.empty() || i.path.front() != seg) continue;
      Index inner = i;
      inner.path.erase(inner.path.begin());
      out[inner] = var;
    }
    return out;
  }

  AnnMap with_prefix(const AnnMap& m, const std::string& seg) {
    AnnMap out;
    for (const auto& [i, var] : m) out[i.with_prefix(seg)] = var;
    return out;
  }

  struct EvalState {
    TypeContext types;
    std::map<std::string, AnnMap> anns;
    std::map<std::string, const FunDef*> funs;
    VarId c = kZeroAnn;
  };

  struct GenResult {
    CfType type;
    AnnMap anns;
  };

  AnnMap consume(EvalState& st, const std::string& x) {
    auto it = st.anns.find(x);
    if (it == st.anns.end()) return {};
    auto [share, rest] = split(it->second, x);
    it->second = std::move(rest);
    return share;
  }

  // After a join, the residual share of each outer variable is whatever
  // both branches can spare.
  void merge_residue(EvalState& st, const EvalState& b1, const EvalState& b2) {
    for (auto& [name, anns] : st.anns) {
      auto i1 = b1.anns.find(name), i2 = b2.anns.find(name);
      if (i1 == b1.anns.end() || i2 == b2.anns.end()) continue;
      for (auto& [idx, var] : anns) {
        VarId v1 = i1->second.count(idx) ? i1->second.at(idx) : kZeroAnn;
        VarId v2 = i2->second.count(idx) ? i2->second.at(idx) : kZeroAnn;
        if (v1 == v2) {
          var = v1;
        } else if (v1 == kZeroAnn || v2 == kZeroAnn) {
          var = kZeroAnn;
        } else {
          VarId w = fresh(name + ".res." + idx.str());
          emit(term(w), Cmp::Le, term(v1));
          emit(term(w), Cmp::Le, term(v2));
          var = w;
        }
      }
    }
  }

  static CfType join_ty(const CfType& a, const CfType& b) {
    if (a.kind == CfType::Kind::Abstract) return b;
    return a;
  }

  // Index of one level below `lvl` in the recurrence (deg k+1 / base b+1).
  static Index level_index(Basis::Kind kind, int lvl) {
    return kind == Basis::Kind::Polynomial ? Index::deg({}, lvl) : Index::base({}, lvl);
  }

  GenResult gen(EvalState& st, const Expr& e, int level, ClassicMode mode) {
    const Basis basis = level_basis(level);
    switch (e.kind) {
      case Expr::Kind::Bool:
        return {CfType::boolean(), {}};
      case Expr::Kind::Nil:
        // The empty list may claim any annotation.
        return {CfType::list(CfType::abstract()),
                fresh_anns(CfType::list(CfType::abstract()), level, "nil")};
      case Expr::Kind::Var: {
        auto ty = st.types.find(e.s1);
        return {ty == st.types.end() ? CfType::abstract() : ty->second, consume(st, e.s1)};
      }
      case Expr::Kind::Tick: {
        if (mode == ClassicMode::Costful) {
          VarId c2 = fresh("c.tick");
          LinExpr rhs = term(c2);
          rhs += LinExpr(e.cost);
          emit(term(st.c), Cmp::Ge, std::move(rhs));
          st.c = c2;
        }
        return gen(st, *e.a, level, mode);
      }
      case Expr::Kind::Cons: {
        consume(st, e.a->s1);  // shallow: element potential is dropped
        AnnMap tail = consume(st, e.b->s1);
        CfType lt = st.types.count(e.b->s1) ? st.types.at(e.b->s1)
                                            : CfType::list(CfType::abstract());
        AnnMap r = fresh_anns(lt, level, "cons");
        for (int k = base_level(); k <= level; ++k) {
          Index ik = level_index(kind, k);
          LinExpr need = term(r.at(ik));
          if (kind == Basis::Kind::Exponential) need *= Rat(k);
          Index up = level_index(kind, k + 1);
          if (r.count(up)) need += term(r.at(up));
          emit(term(tail.count(ik) ? tail.at(ik) : kZeroAnn), Cmp::Ge, std::move(need));
        }
        VarId c2 = fresh("c.cons");
        LinExpr pay = term(c2);
        pay += term(r.at(level_index(kind, base_level())));
        emit(term(st.c), Cmp::Ge, std::move(pay));
        st.c = c2;
        return {lt, std::move(r)};
      }
      case Expr::Kind::Pair: {
        AnnMap a = consume(st, e.a->s1);
        AnnMap b = consume(st, e.b->s1);
        CfType ta = st.types.count(e.a->s1) ? st.types.at(e.a->s1) : CfType::abstract();
        CfType tb = st.types.count(e.b->s1) ? st.types.at(e.b->s1) : CfType::abstract();
        AnnMap r = with_prefix(a, "1");
        for (auto& [i, v] : with_prefix(b, "2")) r[i] = v;
        return {CfType::pair(ta, tb), std::move(r)};
      }
      case Expr::Kind::CasePair: {
        AnnMap share = consume(st, e.a->s1);
        CfType tp = st.types.count(e.a->s1) ? st.types.at(e.a->s1)
                                            : CfType::pair(CfType::abstract(), CfType::abstract());
        EvalState st2 = st;
        st2.types[e.s1] = tp.a ? *tp.a : CfType::abstract();
        st2.types[e.s2] = tp.b ? *tp.b : CfType::abstract();
        st2.anns[e.s1] = sub_component(share, "1");
        st2.anns[e.s2] = sub_component(share, "2");
        st2.funs.erase(e.s1);
        st2.funs.erase(e.s2);
        GenResult r = gen(st2, *e.b, level, mode);
        st.c = st2.c;
        st.anns = st2.anns;
        for (const auto& nm : {e.s1, e.s2}) st.anns.erase(nm);
        return r;
      }
      case Expr::Kind::CaseList: {
        AnnMap share = consume(st, e.a->s1);
        CfType tl = st.types.count(e.a->s1) ? st.types.at(e.a->s1)
                                            : CfType::list(CfType::abstract());
        CfType elem = tl.a ? *tl.a : CfType::abstract();
        VarId c_entry = st.c;
        auto anns_entry = st.anns;

        // nil branch: the matched list holds zero potential.
        EvalState st_nil = st;
        GenResult rn = gen(st_nil, *e.b, level, mode);

        // cons branch: Pascal / Stirling transfer to the tail.
        EvalState st_cons = st;
        st_cons.c = c_entry;
        st_cons.anns = anns_entry;
        st_cons.types[e.s1] = elem;
        st_cons.types[e.s2] = tl;
        st_cons.funs.erase(e.s1);
        st_cons.funs.erase(e.s2);
        AnnMap tail;
        for (int k = base_level(); k <= level; ++k) {
          Index ik = level_index(kind, k);
          VarId t = fresh("t." + ik.str());
          tail[ik] = t;
          LinExpr from = term(share.count(ik) ? share.at(ik) : kZeroAnn);
          if (kind == Basis::Kind::Exponential) from *= Rat(k);
          Index up = level_index(kind, k + 1);
          if (share.count(up)) from += term(share.at(up));
          emit(term(t), Cmp::Eq, std::move(from));
        }
        AnnMap head;
        for (const auto& i : indices(elem, basis)) head[i] = kZeroAnn;
        st_cons.anns[e.s1] = std::move(head);
        st_cons.anns[e.s2] = std::move(tail);
        {
          VarId c2 = fresh("c.match");
          LinExpr gain = term(c_entry);
          gain += term(share.count(level_index(kind, base_level()))
                           ? share.at(level_index(kind, base_level()))
                           : kZeroAnn);
          emit(term(c2), Cmp::Eq, std::move(gain));
          st_cons.c = c2;
        }
        GenResult rc = gen(st_cons, *e.c, level, mode);

        // join
        CfType ty = join_ty(rn.type, rc.type);
        AnnMap r = fresh_anns(ty, level, "join");
        VarId cj = fresh("c.join");
        for (const auto& [i, var] : r) {
          emit(term(var), Cmp::Le, term(rn.anns.count(i) ? rn.anns.at(i) : kZeroAnn));
          emit(term(var), Cmp::Le, term(rc.anns.count(i) ? rc.anns.at(i) : kZeroAnn));
        }
        emit(term(cj), Cmp::Le, term(st_nil.c));
        emit(term(cj), Cmp::Le, term(st_cons.c));
        st.c = cj;
        merge_residue(st, st_nil, st_cons);
        return {ty, std::move(r)};
      }
      case Expr::Kind::Cond: {
        consume(st, e.a->s1);
        VarId c_entry = st.c;
        auto anns_entry = st.anns;
        EvalState st1 = st;
        GenResult r1 = gen(st1, *e.b, level, mode);
        EvalState st2 = st;
        st2.c = c_entry;
        st2.anns = anns_entry;
        GenResult r2 = gen(st2, *e.c, level, mode);
        CfType ty = join_ty(r1.type, r2.type);
        AnnMap r = fresh_anns(ty, level, "join");
        VarId cj = fresh("c.join");
        for (const auto& [i, var] : r) {
          emit(term(var), Cmp::Le, term(r1.anns.count(i) ? r1.anns.at(i) : kZeroAnn));
          emit(term(var), Cmp::Le, term(r2.anns.count(i) ? r2.anns.at(i) : kZeroAnn));
        }
        emit(term(cj), Cmp::Le, term(st1.c));
        emit(term(cj), Cmp::Le, term(st2.c));
        st.c = cj;
        merge_residue(st, st1, st2);
        return {ty, std::move(r)};
      }
      case Expr::Kind::Let: {
        GenResult bound = gen(st, *e.a, level, mode);
        EvalState st2 = st;
        st2.types[e.s1] = bound.type;
        st2.anns[e.s1] = std::move(bound.anns);
        st2.funs.erase(e.s1);
        if (const FunDef* def = resolve_literal(*e.a, st)) st2.funs[e.s1] = def;
        GenResult r = gen(st2, *e.b, level, mode);
        st.c = st2.c;
        st.anns = st2.anns;
        st.anns.erase(e.s1);
        return r;
      }
      case Expr::Kind::Fun: {
        // A function value carries no potential.
        return {CfType::fun(CfType::abstract(), CfType::abstract()), {}};
      }
      case Expr::Kind::App:
        return gen_app(st, e, level, mode);
    }
    throw LangError("classic: bad expression");
  }

  const FunDef* resolve_literal(const Expr& e, const EvalState& st) const {
    switch (e.kind) {
      case Expr::Kind::Fun: {
        auto it = literal_defs.find(&e);
        return it == literal_defs.end() ? nullptr : it->second;
      }
      case Expr::Kind::Var: {
        auto it = st.funs.find(e.s1);
        return it == st.funs.end() ? nullptr : it->second;
      }
      case Expr::Kind::Let:
        return resolve_literal(*e.b, st);
      case Expr::Kind::Tick:
        return resolve_literal(*e.a, st);
      default:
        return nullptr;
    }
  }

  GenResult gen_app(EvalState& st, const Expr& e, int level, ClassicMode mode) {
    const std::string& fvar = e.a->s1;
    const std::string& xvar = e.b->s1;
    auto fit = st.funs.find(fvar);
    if (fit == st.funs.end())
      throw LangError("classic: call target '" + fvar + "' does not resolve to a function");
    const FunDef* callee = fit->second;
    AnnMap arg_share = consume(st, xvar);

    // A call to a function with an active typing is resource-polymorphic
    // recursion; handle it with the signature-splitting rule.
    Sig* rec = nullptr;
    for (auto it = active.rbegin(); it != active.rend(); ++it)
      if ((*it)->fun == callee) {
        rec = *it;
        break;
      }
    if (rec) return link_recursive(st, *rec, callee, arg_share, level, mode);

    Sig* inst = instantiate(callee, level, mode);
    return link_external(st, *inst, arg_share);
  }

  // External call: bind the share to a fresh retyping's signature.
  GenResult link_external(EvalState& st, Sig& sig, const AnnMap& arg_share) {
    for (const auto& [i, var] : sig.in)
      emit(term(arg_share.count(i) ? arg_share.at(i) : kZeroAnn), Cmp::Eq, term(var));
    emit(term(st.c), Cmp::Ge, term(sig.in_c));
    VarId c2 = fresh("c.call");
    LinExpr thread = term(st.c);
    thread -= term(sig.in_c);
    thread += term(sig.out_c);
    emit(term(c2), Cmp::Eq, std::move(thread));
    st.c = c2;
    return {sig.fun->ret, sig.out};
  }

  // Recursive call: equate with the active signature at the base level;
  // above it, split off a cost-free excess typed one level lower.
  GenResult link_recursive(EvalState& st, Sig& sig, const FunDef* callee,
                           const AnnMap& arg_share, int level, ClassicMode mode) {
    (void)mode;
    if (sig.level <= base_level()) {
      for (const auto& [i, var] : sig.in)
        emit(term(arg_share.count(i) ? arg_share.at(i) : kZeroAnn), Cmp::Eq, term(var));
      emit(term(st.c), Cmp::Ge, term(sig.in_c));
      VarId c2 = fresh("c.call");
      LinExpr thread = term(st.c);
      thread -= term(sig.in_c);
      thread += term(sig.out_c);
      emit(term(c2), Cmp::Eq, std::move(thread));
      st.c = c2;
      return {sig.fun->ret, sig.out};
    }

    Sig* excess = instantiate(callee, sig.level - 1, ClassicMode::CostFree);
    int top = top_of(sig.level);
    for (const auto& [i, var] : sig.in) {
      LinExpr need = term(var);
      if (i.level != top) need += term(excess->in.count(i) ? excess->in.at(i) : kZeroAnn);
      emit(term(arg_share.count(i) ? arg_share.at(i) : kZeroAnn), Cmp::Eq, std::move(need));
    }
    emit(term(st.c), Cmp::Ge, [&] {
      LinExpr need = term(sig.in_c);
      need += term(excess->in_c);
      return need;
    }());
    VarId c2 = fresh("c.call");
    {
      LinExpr thread = term(st.c);
      thread -= term(sig.in_c);
      thread -= term(excess->in_c);
      thread += term(sig.out_c);
      thread += term(excess->out_c);
      emit(term(c2), Cmp::Eq, std::move(thread));
    }
    st.c = c2;
    AnnMap ret;
    for (const auto& [i, var] : sig.out) {
      VarId rv = fresh("ret." + i.str());
      ret[i] = rv;
      LinExpr sum = term(var);
      if (i.level != top) sum += term(excess->out.count(i) ? excess->out.at(i) : kZeroAnn);
      emit(term(rv), Cmp::Eq, std::move(sum));
    }
    return {sig.fun->ret, std::move(ret)};
  }

  Sig* instantiate(const FunDef* f, int level, ClassicMode mode) {
    check_deadline();
    if (opts->memoize_retypings) {
      auto key = std::make_tuple(f, level, static_cast<int>(mode));
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    ++instances;
    auto sig = std::make_unique<Sig>();
    Sig* s = sig.get();
    owned.push_back(std::move(sig));
    s->fun = f;
    s->level = level;
    s->mode = mode;
    s->in = fresh_anns(f->arg, level, f->name + ".in");
    s->out = fresh_anns(f->ret, level, f->name + ".out");
    s->in_c = fresh(f->name + ".in.c");
    s->out_c = fresh(f->name + ".out.c");
    if (opts->memoize_retypings)
      memo[std::make_tuple(f, level, static_cast<int>(mode))] = s;

    EvalState st;
    st.types[f->self_name] = CfType::fun(f->arg, f->ret);
    st.types[f->arg_name] = f->arg;
    for (const auto& [name, t] : f->captured) st.types[name] = t;
    for (const auto& [name, key] : f->captured_funs) {
      if (const FunDef* def = prog->find(key)) st.funs[name] = def;
    }
    st.funs[f->self_name] = f;
    // Context binding: the argument's context annotations equal the
    // signature's.
    AnnMap bound = fresh_anns(f->arg, level, f->name + ".ctx");
    for (const auto& [i, var] : bound) emit(term(var), Cmp::Eq, term(s->in.at(i)));
    st.anns[f->arg_name] = std::move(bound);
    st.c = s->in_c;

    active.push_back(s);
    GenResult body = gen(st, *f->body, level, mode);
    active.pop_back();

    for (const auto& [i, var] : s->out)
      emit(term(var), Cmp::Le, term(body.anns.count(i) ? body.anns.at(i) : kZeroAnn));
    emit(term(s->out_c), Cmp::Le, term(st.c));
    return s;
  }
};

Rat level_weight(int level) {
  Rat w(1);
  for (int i = 0; i < level; ++i) w *= 10;
  return w;
}

}  // namespace

ClassicReport classic_infer(const Program& prog, const std::string& fname, const Basis& basis,
                            ClassicMode mode, const ClassicOptions& opts) {
  ClassicReport rep;
  rep.name = fname;
  rep.mode = mode;
  const FunDef* f = prog.find(fname);
  if (!f) {
    rep.status = ClassicStatus::Error;
    rep.diagnostics.push_back("no function named '" + fname + "'");
    return rep;
  }

  ClassicGen gen(prog);
  gen.kind = basis.kind;
  gen.opts = &opts;
  Sig* top = nullptr;
  auto t0 = Clock::now();
  try {
    top = gen.instantiate(f, basis.max, mode);
  } catch (const GenAborted&) {
    rep.status = ClassicStatus::Aborted;
    rep.constraint_count = static_cast<int>(gen.emitted);
    rep.instance_count = gen.instances;
    rep.diagnostics.push_back("constraint generation hit the deadline");
    return rep;
  } catch (const LangError& err) {
    rep.status = ClassicStatus::Error;
    rep.diagnostics.push_back(err.what());
    return rep;
  }
  rep.constraint_count = static_cast<int>(gen.emitted);
  rep.instance_count = gen.instances;
  rep.gen_secs = std::chrono::duration<double>(Clock::now() - t0).count();
  rep.lp.vars = static_cast<int>(gen.lp.num_vars());
  rep.lp.constraints = static_cast<int>(gen.lp.constraints.size());

  if (opts.skip_solve) {
    rep.status = ClassicStatus::Solved;
    rep.lp.solve_state = "skipped";
    return rep;
  }
  if (!gen.storing) {
    rep.status = ClassicStatus::Aborted;
    rep.lp.solve_state = "aborted";
    rep.diagnostics.push_back("constraint system too large to solve in budget");
    return rep;
  }

  // Experiment pins and objective (not counted as generated constraints).
  LPProblem& lp = gen.lp;
  const ClassicObjective& obj = opts.objective;
  auto add_pin = [&](VarId v, const Rat& val) {
    lp.add_constraint(LinExpr::var(v), Cmp::Eq, LinExpr(val));
  };
  if (obj.kind == ClassicObjective::Kind::MaximizeOutput) {
    for (const auto& [i, v] : top->in) add_pin(v, obj.pinned_input.get(i));
    add_pin(top->in_c, obj.pinned_input.get(Index::constant()));
    for (const auto& [i, v] : top->out)
      lp.objective.add_term(v, level_weight(i.level));
    lp.objective.add_term(top->out_c, Rat(1));
  } else if (obj.kind == ClassicObjective::Kind::MaximizeInput) {
    // Constant potential threads freely through calls, so only the list
    // annotations are maximized; an unbounded optimum would be meaningless.
    for (const auto& [i, v] : top->in) lp.objective.add_term(v, level_weight(i.level));
  } else {
    for (const auto& [i, v] : top->in)
      lp.objective.add_term(v, -level_weight(i.level));
    lp.objective.add_term(top->in_c, Rat(-1));
  }
  if (obj.pin_output_to_input) {
    for (const auto& [i, v] : top->out) {
      auto it = top->in.find(i);
      if (it != top->in.end())
        lp.add_constraint(LinExpr::var(v), Cmp::Eq, LinExpr::var(it->second));
    }
  }
  if (obj.require_nonzero_realloc) {
    LinExpr sum;
    for (const auto& [i, v] : top->out) sum += LinExpr::var(v);
    lp.add_constraint(std::move(sum), Cmp::Ge, LinExpr(Rat(1)));
  }

  SolveOptions sopts;
  sopts.deadline = opts.deadline;
  auto t1 = Clock::now();
  Solution sol = solve(lp, sopts);
  rep.solve_secs = std::chrono::duration<double>(Clock::now() - t1).count();
  switch (sol.status) {
    case Solution::Status::Optimal: {
      rep.status = ClassicStatus::Solved;
      rep.lp.solve_state = "optimal";
      auto grab = [&](const AnnMap& m, VarId c, AnnVec& out) {
        for (const auto& [i, v] : m) {
          auto it = sol.assignment.find(v);
          if (it != sol.assignment.end()) out.set(i, it->second);
        }
        auto it = sol.assignment.find(c);
        if (it != sol.assignment.end()) out.set(Index::constant(), it->second);
      };
      grab(top->in, top->in_c, rep.in_anns);
      grab(top->out, top->out_c, rep.out_anns);
      break;
    }
    case Solution::Status::Infeasible:
      rep.status = ClassicStatus::Infeasible;
      rep.lp.solve_state = "infeasible";
      break;
    case Solution::Status::Unbounded:
      rep.status = ClassicStatus::Unbounded;
      rep.lp.solve_state = "unbounded";
      break;
    case Solution::Status::Aborted:
      rep.status = ClassicStatus::Aborted;
      rep.lp.solve_state = "aborted";
      break;
  }
  return rep;
}

}  // namespace lincost
