#include "lincost/eval.hpp"

namespace lincost {

namespace {

struct Evaluator {
  long steps_left;
  Rat cost;

  ValuePtr lookup(const Env& env, const std::string& x) {
    auto it = env.find(x);
    if (it == env.end()) throw EvalError("unbound variable '" + x + "' at runtime");
    return it->second;
  }

  const std::string& var_of(const ExprPtr& e) {
    if (e->kind != Expr::Kind::Var)
      throw EvalError("expected a variable position (expression not let-normal)");
    return e->s1;
  }

  ValuePtr eval(const Env& env, const Expr& e) {
    if (--steps_left < 0) throw BudgetExceeded();
    switch (e.kind) {
      case Expr::Kind::Bool:
        return mk_vbool(e.bval);
      case Expr::Kind::Nil:
        return mk_vnil();
      case Expr::Kind::Var:
        return lookup(env, e.s1);
      case Expr::Kind::Cons: {
        ValuePtr h = eval(env, *e.a);
        ValuePtr t = eval(env, *e.b);
        if (t->kind != Value::Kind::Cons && t->kind != Value::Kind::Nil)
          throw EvalError("cons onto a non-list");
        return mk_vcons(std::move(h), std::move(t));
      }
      case Expr::Kind::Pair:
        return mk_vpair(eval(env, *e.a), eval(env, *e.b));
      case Expr::Kind::Cond: {
        ValuePtr c = eval(env, *e.a);
        if (c->kind != Value::Kind::Bool) throw EvalError("if on a non-boolean");
        return c->bval ? eval(env, *e.b) : eval(env, *e.c);
      }
      case Expr::Kind::CaseList: {
        ValuePtr scrut = eval(env, *e.a);
        if (scrut->kind == Value::Kind::Nil) return eval(env, *e.b);
        if (scrut->kind != Value::Kind::Cons) throw EvalError("case on a non-list");
        Env env2 = env;
        env2[e.s1] = scrut->v1;
        env2[e.s2] = scrut->v2;
        return eval(env2, *e.c);
      }
      case Expr::Kind::CasePair: {
        ValuePtr scrut = eval(env, *e.a);
        if (scrut->kind != Value::Kind::Pair) throw EvalError("case on a non-pair");
        Env env2 = env;
        env2[e.s1] = scrut->v1;
        env2[e.s2] = scrut->v2;
        return eval(env2, *e.b);
      }
      case Expr::Kind::Let: {
        ValuePtr bound = eval(env, *e.a);
        Env env2 = env;
        env2[e.s1] = std::move(bound);
        return eval(env2, *e.b);
      }
      case Expr::Kind::Fun:
        return mk_vclosure(env, e.s1, e.s2, e.a);
      case Expr::Kind::App: {
        ValuePtr f = eval(env, *e.a);
        ValuePtr x = eval(env, *e.b);
        if (f->kind != Value::Kind::Closure) throw EvalError("application of a non-closure");
        Env env2 = *f->env;
        env2[f->self] = f;
        env2[f->arg] = std::move(x);
        return eval(env2, *f->body);
      }
      case Expr::Kind::Tick:
        cost += e.cost;
        return eval(env, *e.a);
    }
    throw EvalError("evaluate: bad expression");
  }
};

}  // namespace

ValuePtr evaluate(const Env& env, const Expr& e, long budget) {
  Evaluator ev{budget, Rat(0)};
  return ev.eval(env, e);
}

std::pair<ValuePtr, Rat> evaluate_with_cost(const Env& env, const Expr& e, long budget) {
  Evaluator ev{budget, Rat(0)};
  ValuePtr v = ev.eval(env, e);
  return {std::move(v), std::move(ev.cost)};
}

ValuePtr apply_closure(const ValuePtr& f, const ValuePtr& arg, long budget) {
  if (f->kind != Value::Kind::Closure) throw EvalError("application of a non-closure");
  Env env = *f->env;
  env[f->self] = f;
  env[f->arg] = arg;
  Evaluator ev{budget, Rat(0)};
  return ev.eval(env, *f->body);
}

}  // namespace lincost
