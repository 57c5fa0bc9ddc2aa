#include "lincost/types.hpp"

#include <algorithm>
#include <functional>

namespace lincost {

bool type_equal(const CfType& s, const CfType& t) {
  if (s.kind != t.kind) return false;
  switch (s.kind) {
    case CfType::Kind::Bool:
    case CfType::Kind::Abstract:
      return true;
    case CfType::Kind::List:
      return type_equal(*s.a, *t.a);
    case CfType::Kind::Pair:
    case CfType::Kind::Fun:
      return type_equal(*s.a, *t.a) && type_equal(*s.b, *t.b);
  }
  return false;
}

std::string type_str(const CfType& t) {
  switch (t.kind) {
    case CfType::Kind::Bool: return "B";
    case CfType::Kind::Abstract: return "a";
    case CfType::Kind::List: return "L(" + type_str(*t.a) + ")";
    case CfType::Kind::Pair: return "(" + type_str(*t.a) + " * " + type_str(*t.b) + ")";
    case CfType::Kind::Fun: return "(" + type_str(*t.a) + " -> " + type_str(*t.b) + ")";
  }
  return "?";
}

namespace {

// Unification types; Var nodes bind through `link`.
struct UType {
  enum class Kind { Bool, List, Pair, Fun, Var };
  Kind kind = Kind::Var;
  std::shared_ptr<UType> a, b;
  std::shared_ptr<UType> link;  // Var binding
};
using UPtr = std::shared_ptr<UType>;

UPtr uvar() { return std::make_shared<UType>(); }
UPtr umk(UType::Kind k, UPtr a = nullptr, UPtr b = nullptr) {
  auto t = std::make_shared<UType>();
  t->kind = k;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

UPtr find(UPtr t) {
  while (t->kind == UType::Kind::Var && t->link) t = t->link;
  return t;
}

bool occurs(const UPtr& v, UPtr t) {
  t = find(std::move(t));
  if (t == v) return true;
  if (t->a && occurs(v, t->a)) return true;
  if (t->b && occurs(v, t->b)) return true;
  return false;
}

void unify(UPtr s, UPtr t, const Expr& at) {
  s = find(std::move(s));
  t = find(std::move(t));
  if (s == t) return;
  if (s->kind == UType::Kind::Var) {
    if (occurs(s, t)) throw TypeError("infinite type");
    s->link = t;
    return;
  }
  if (t->kind == UType::Kind::Var) {
    unify(t, s, at);
    return;
  }
  if (s->kind != t->kind)
    throw TypeError("type mismatch at " + std::to_string(at.line) + ":" +
                    std::to_string(at.col));
  if (s->a) unify(s->a, t->a, at);
  if (s->b) unify(s->b, t->b, at);
}

CfType resolve(UPtr t) {
  t = find(std::move(t));
  switch (t->kind) {
    case UType::Kind::Var: return CfType::abstract();
    case UType::Kind::Bool: return CfType::boolean();
    case UType::Kind::List: return CfType::list(resolve(t->a));
    case UType::Kind::Pair: return CfType::pair(resolve(t->a), resolve(t->b));
    case UType::Kind::Fun: return CfType::fun(resolve(t->a), resolve(t->b));
  }
  return CfType::abstract();
}

using Scope = std::map<std::string, int>;  // var name -> function record id

struct Checker {
  struct FunRecord {
    std::string key;
    ExprPtr fun;
    UPtr type;
    std::map<std::string, UPtr> env;  // environment at the literal
    Scope scope;                      // function vars visible at the literal
  };

  std::vector<FunRecord> funs;
  std::map<const Expr*, int> fun_record;  // Fun node -> record id
  std::map<const Expr*, int> app_callee;  // App node -> callee record id
  std::set<std::string> used_keys;

  std::string register_key(const std::string& name) {
    std::string key = name;
    int n = 2;
    while (used_keys.count(key)) key = name + "$" + std::to_string(n++);
    used_keys.insert(key);
    return key;
  }

  // The function record an expression statically denotes, or -1.
  int static_fun_id(const Expr& e, const Scope& scope) const {
    switch (e.kind) {
      case Expr::Kind::Fun: {
        auto it = fun_record.find(&e);
        return it == fun_record.end() ? -1 : it->second;
      }
      case Expr::Kind::Var: {
        auto it = scope.find(e.s1);
        return it == scope.end() ? -1 : it->second;
      }
      case Expr::Kind::Let:
        return static_fun_id(*e.b, scope);
      case Expr::Kind::Tick:
        return static_fun_id(*e.a, scope);
      default:
        return -1;
    }
  }

  UPtr infer(const ExprPtr& ep, std::map<std::string, UPtr>& env, Scope& scope) {
    const Expr& e = *ep;
    switch (e.kind) {
      case Expr::Kind::Bool:
        return umk(UType::Kind::Bool);
      case Expr::Kind::Nil:
        return umk(UType::Kind::List, uvar());
      case Expr::Kind::Var: {
        auto it = env.find(e.s1);
        if (it == env.end()) throw TypeError("unbound variable '" + e.s1 + "'");
        return it->second;
      }
      case Expr::Kind::Cons: {
        UPtr th = infer(e.a, env, scope);
        UPtr tt = infer(e.b, env, scope);
        unify(tt, umk(UType::Kind::List, th), e);
        return tt;
      }
      case Expr::Kind::Pair:
        return umk(UType::Kind::Pair, infer(e.a, env, scope), infer(e.b, env, scope));
      case Expr::Kind::Cond: {
        unify(infer(e.a, env, scope), umk(UType::Kind::Bool), e);
        UPtr t1 = infer(e.b, env, scope);
        UPtr t2 = infer(e.c, env, scope);
        unify(t1, t2, e);
        return t1;
      }
      case Expr::Kind::CaseList: {
        UPtr ts = infer(e.a, env, scope);
        UPtr elem = uvar();
        unify(ts, umk(UType::Kind::List, elem), e);
        UPtr tn = infer(e.b, env, scope);
        auto env2 = env;
        auto sc2 = scope;
        env2[e.s1] = elem;
        env2[e.s2] = ts;
        sc2.erase(e.s1);
        sc2.erase(e.s2);
        UPtr tc = infer(e.c, env2, sc2);
        unify(tn, tc, e);
        return tn;
      }
      case Expr::Kind::CasePair: {
        UPtr ts = infer(e.a, env, scope);
        UPtr f1 = uvar(), f2 = uvar();
        unify(ts, umk(UType::Kind::Pair, f1, f2), e);
        auto env2 = env;
        auto sc2 = scope;
        env2[e.s1] = f1;
        env2[e.s2] = f2;
        sc2.erase(e.s1);
        sc2.erase(e.s2);
        return infer(e.b, env2, sc2);
      }
      case Expr::Kind::Let: {
        UPtr tb = infer(e.a, env, scope);
        int fid = static_fun_id(*e.a, scope);
        auto env2 = env;
        auto sc2 = scope;
        env2[e.s1] = tb;
        sc2.erase(e.s1);
        if (fid >= 0) {
          sc2[e.s1] = fid;
          // A directly let-bound literal takes its binder as registry key.
          if (e.a->kind == Expr::Kind::Fun) {
            used_keys.erase(funs[fid].key);
            funs[fid].key = register_key(e.s1);
          }
        }
        return infer(e.b, env2, sc2);
      }
      case Expr::Kind::Fun: {
        UPtr targ = uvar(), tret = uvar();
        UPtr tf = umk(UType::Kind::Fun, targ, tret);
        int id = static_cast<int>(funs.size());
        funs.push_back(FunRecord{register_key(e.s1), ep, tf, env, scope});
        fun_record[&e] = id;
        auto env2 = env;
        auto sc2 = scope;
        env2[e.s1] = tf;
        env2[e.s2] = targ;
        sc2.erase(e.s2);
        sc2[e.s1] = id;  // self-calls resolve here
        UPtr tb = infer(e.a, env2, sc2);
        unify(tb, tret, e);
        return tf;
      }
      case Expr::Kind::App: {
        UPtr tf = infer(e.a, env, scope);
        UPtr tx = infer(e.b, env, scope);
        UPtr tr = uvar();
        unify(tf, umk(UType::Kind::Fun, tx, tr), e);
        if (e.a->kind == Expr::Kind::Var) {
          auto it = scope.find(e.a->s1);
          if (it != scope.end()) app_callee[&e] = it->second;
        }
        return tr;
      }
      case Expr::Kind::Tick:
        return infer(e.a, env, scope);
    }
    throw TypeError("typecheck: bad expression");
  }
};

void collect_callees(const Expr& e, const std::map<const Expr*, int>& app_callee, int self_id,
                     std::vector<int>& out, const std::map<const Expr*, int>& fun_record) {
  // A nested literal's calls belong to the nested function, but the nested
  // function itself is a dependency (its matrix annotates the literal).
  if (e.kind == Expr::Kind::Fun) {
    auto it = fun_record.find(&e);
    if (it != fun_record.end()) {
      if (it->second != self_id &&
          std::find(out.begin(), out.end(), it->second) == out.end())
        out.push_back(it->second);
      return;
    }
  }
  if (e.kind == Expr::Kind::App) {
    auto it = app_callee.find(&e);
    if (it != app_callee.end() && it->second != self_id &&
        std::find(out.begin(), out.end(), it->second) == out.end())
      out.push_back(it->second);
  }
  for (const ExprPtr* sub : {&e.a, &e.b, &e.c})
    if (*sub) collect_callees(**sub, app_callee, self_id, out, fun_record);
}

}  // namespace

Program typecheck_program(ExprPtr root) {
  Checker ck;
  std::map<std::string, UPtr> env;
  // Free variables (open terms appear when re-checking closure bodies) get
  // fresh type variables.
  for (const auto& v : free_vars(*root)) env[v] = uvar();
  Scope scope;
  ck.infer(root, env, scope);

  Program prog;
  prog.root = root;
  // A function argument nothing constrains defaults to a list of abstract
  // elements, so the analysis has annotation slots to work with.
  for (const auto& rec : ck.funs) {
    UPtr arg = find(find(rec.type)->a);
    if (arg->kind == UType::Kind::Var) arg->link = umk(UType::Kind::List, uvar());
  }
  for (int id = 0; id < static_cast<int>(ck.funs.size()); ++id) {
    const auto& rec = ck.funs[id];
    FunDef def;
    def.name = rec.key;
    def.self_name = rec.fun->s1;
    def.arg_name = rec.fun->s2;
    def.fun = rec.fun;
    def.body = rec.fun->a;
    CfType ft = resolve(rec.type);
    def.arg = *ft.a;
    def.ret = *ft.b;
    for (const auto& v : free_vars(*rec.fun)) {
      auto it = rec.env.find(v);
      if (it == rec.env.end()) throw TypeError("untyped free variable '" + v + "'");
      def.captured[v] = resolve(it->second);
      auto kit = rec.scope.find(v);
      if (kit != rec.scope.end()) def.captured_funs[v] = ck.funs[kit->second].key;
    }
    std::vector<int> callee_ids;
    collect_callees(*def.body, ck.app_callee, id, callee_ids, ck.fun_record);
    for (int cid : callee_ids) def.callees.push_back(ck.funs[cid].key);
    prog.funs.push_back(std::move(def));
  }
  return prog;
}

}  // namespace lincost
