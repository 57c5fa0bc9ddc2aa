#include "lincost/wellformed.hpp"

#include "lincost/infer.hpp"

namespace lincost {

namespace {

bool wf(const ValuePtr& v, const CfType& t, const Basis& basis, const FunMats& fun_mats);

// Structural compatibility: the abstract element type matches anything.
bool type_compat(const CfType& inferred, const CfType& claimed) {
  if (inferred.kind == CfType::Kind::Abstract || claimed.kind == CfType::Kind::Abstract)
    return true;
  if (inferred.kind != claimed.kind) return false;
  switch (inferred.kind) {
    case CfType::Kind::Bool:
      return true;
    case CfType::Kind::List:
      return type_compat(*inferred.a, *claimed.a);
    case CfType::Kind::Pair:
    case CfType::Kind::Fun:
      return type_compat(*inferred.a, *claimed.a) && type_compat(*inferred.b, *claimed.b);
    default:
      return true;
  }
}

// V-Fun: the stored literal must re-derive at the claimed type, checking
// the M-Fun premises against t's matrix, and the captured environment must
// be well-formed against a context that types the body.
bool wf_closure(const ValuePtr& v, const CfType& t, const Basis& basis,
                const FunMats& fun_mats) {
  if (!t.mat) return false;
  // Reconstruct a context for the captured environment by typechecking the
  // literal with self and argument bound.
  ExprPtr literal = mk_fun(v->self, v->arg, v->body);
  Program prog;
  try {
    prog = typecheck_program(literal);
  } catch (const TypeError&) {
    return false;
  }
  if (prog.funs.empty()) return false;
  const FunDef& def = prog.funs.front();
  if (!type_compat(def.arg, *t.a) || !type_compat(def.ret, *t.b)) return false;

  FunDef shaped = def;
  shaped.arg = *t.a;
  shaped.ret = *t.b;
  // Captured function variables need their matrices to re-derive.
  for (auto& [name, ct] : shaped.captured) {
    if (ct.kind != CfType::Kind::Fun) continue;
    auto it = fun_mats.find(name);
    if (it == fun_mats.end()) return false;
    shaped.captured_funs[name] = name;
  }
  FunConstraints fc;
  try {
    fc = fun_constraints(shaped, *t.mat, basis, fun_mats);
  } catch (const LangError&) {
    return false;
  }
  if (!fc.havoc_left.empty()) return false;
  for (const auto& iq : fc.ineqs) {
    if (!iq.lhs.is_rational() || !iq.rhs.is_rational()) return false;
    if (!(iq.lhs.rational() <= iq.rhs.rational())) return false;
  }
  // V-Context over the captured environment.
  for (const auto& [name, ct] : shaped.captured) {
    auto vit = v->env->find(name);
    if (vit == v->env->end()) return false;
    CfType ct2 = ct;
    if (ct2.kind == CfType::Kind::Fun) {
      auto mit = fun_mats.find(name);
      if (mit == fun_mats.end()) return false;
      ct2.mat = mit->second;
    }
    if (!wf(vit->second, ct2, basis, fun_mats)) return false;
  }
  return true;
}

bool wf(const ValuePtr& v, const CfType& t, const Basis& basis, const FunMats& fun_mats) {
  switch (t.kind) {
    case CfType::Kind::Abstract:
      return true;
    case CfType::Kind::Bool:
      return v->kind == Value::Kind::Bool;
    case CfType::Kind::List: {
      const Value* cur = v.get();
      while (cur->kind == Value::Kind::Cons) {
        if (!wf(cur->v1, *t.a, basis, fun_mats)) return false;
        cur = cur->v2.get();
      }
      return cur->kind == Value::Kind::Nil;
    }
    case CfType::Kind::Pair:
      return v->kind == Value::Kind::Pair && wf(v->v1, *t.a, basis, fun_mats) &&
             wf(v->v2, *t.b, basis, fun_mats);
    case CfType::Kind::Fun:
      return v->kind == Value::Kind::Closure && wf_closure(v, t, basis, fun_mats);
  }
  return false;
}

}  // namespace

bool check_wf(const ValuePtr& v, const CfType& t, const Basis& basis, const FunMats& fun_mats) {
  return wf(v, t, basis, fun_mats);
}

}  // namespace lincost
