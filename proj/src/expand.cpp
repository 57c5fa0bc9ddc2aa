#include "lincost/expand.hpp"

#include <map>

namespace lincost {

namespace {

using FunEnv = std::map<std::string, const Expr*>;  // var -> fun literal

const Expr* static_fun(const Expr& e, const FunEnv& env) {
  switch (e.kind) {
    case Expr::Kind::Fun:
      return &e;
    case Expr::Kind::Var: {
      auto it = env.find(e.s1);
      return it == env.end() ? nullptr : it->second;
    }
    case Expr::Kind::Let:
      return static_fun(*e.b, env);
    case Expr::Kind::Tick:
      return static_fun(*e.a, env);
    default:
      return nullptr;
  }
}

// Does the literal apply its own parameter somewhere (ignoring shadowing)?
bool applies_param(const Expr& e, const std::string& param) {
  auto shadows = [&](const std::string& n) { return n == param; };
  switch (e.kind) {
    case Expr::Kind::App:
      if (e.a->kind == Expr::Kind::Var && e.a->s1 == param) return true;
      return applies_param(*e.b, param);
    case Expr::Kind::Let:
      if (applies_param(*e.a, param)) return true;
      return !shadows(e.s1) && applies_param(*e.b, param);
    case Expr::Kind::Fun:
      return !shadows(e.s1) && !shadows(e.s2) && applies_param(*e.a, param);
    case Expr::Kind::CaseList:
      if (applies_param(*e.b, param)) return true;
      return !shadows(e.s1) && !shadows(e.s2) && applies_param(*e.c, param);
    case Expr::Kind::CasePair:
      return !shadows(e.s1) && !shadows(e.s2) && applies_param(*e.b, param);
    default:
      for (const ExprPtr* sub : {&e.a, &e.b, &e.c})
        if (*sub && applies_param(**sub, param)) return true;
      return false;
  }
}

// e with variable `from` replaced by variable `to`.
ExprPtr subst_var(const ExprPtr& ep, const std::string& from, const std::string& to) {
  const Expr& e = *ep;
  auto binds = [&](const std::string& n) { return n == from; };
  auto collides = [&](const std::string& n) {
    if (n == to)
      throw ExpandError("macro expansion would capture '" + to + "'");
  };
  switch (e.kind) {
    case Expr::Kind::Bool:
    case Expr::Kind::Nil:
      return ep;
    case Expr::Kind::Var:
      return e.s1 == from ? mk_var(to) : ep;
    default: {
      Expr copy = e;
      bool stop_a = false, stop_b = false, stop_c = false;
      switch (e.kind) {
        case Expr::Kind::Let:
          collides(e.s1);
          stop_b = binds(e.s1);
          break;
        case Expr::Kind::Fun:
          collides(e.s1);
          collides(e.s2);
          stop_a = binds(e.s1) || binds(e.s2);
          break;
        case Expr::Kind::CaseList:
          collides(e.s1);
          collides(e.s2);
          stop_c = binds(e.s1) || binds(e.s2);
          break;
        case Expr::Kind::CasePair:
          collides(e.s1);
          collides(e.s2);
          stop_b = binds(e.s1) || binds(e.s2);
          break;
        default:
          break;
      }
      if (copy.a && !stop_a) copy.a = subst_var(copy.a, from, to);
      if (copy.b && !stop_b) copy.b = subst_var(copy.b, from, to);
      if (copy.c && !stop_c) copy.c = subst_var(copy.c, from, to);
      return mk_expr(std::move(copy));
    }
  }
}

struct Expander {
  bool changed = false;
  int fresh = 0;

  ExprPtr walk(const ExprPtr& ep, FunEnv env) {
    const Expr& e = *ep;
    switch (e.kind) {
      case Expr::Kind::Bool:
      case Expr::Kind::Nil:
      case Expr::Kind::Var:
        return ep;
      case Expr::Kind::App: {
        if (e.a->kind == Expr::Kind::Var && e.b->kind == Expr::Kind::Var) {
          const Expr* arg_fun = static_fun(*e.b, env);
          const Expr* callee = static_fun(*e.a, env);
          if (arg_fun) {
            if (!callee)
              throw ExpandError("cannot expand: callee '" + e.a->s1 +
                                "' does not resolve to a known function");
            if (free_vars(*callee->a).count(callee->s1))
              throw ExpandError("cannot expand recursive higher-order function '" +
                                e.a->s1 + "'");
            changed = true;
            return subst_var(callee->a, callee->s2, e.b->s1);
          }
          if (callee && applies_param(*callee->a, callee->s2))
            throw ExpandError("higher-order call '" + e.a->s1 +
                              "' takes a function argument that does not resolve "
                              "statically");
        }
        return ep;
      }
      case Expr::Kind::Let: {
        ExprPtr bound = walk(e.a, env);
        FunEnv env2 = env;
        const Expr* sf = static_fun(*bound, env);
        if (sf)
          env2[e.s1] = sf;
        else
          env2.erase(e.s1);
        ExprPtr body = walk(e.b, env2);
        if (bound == e.a && body == e.b) return ep;
        return mk_let(e.s1, std::move(bound), std::move(body));
      }
      case Expr::Kind::Fun: {
        FunEnv env2 = env;
        env2.erase(e.s1);
        env2.erase(e.s2);
        ExprPtr body = walk(e.a, env2);
        if (body == e.a) return ep;
        return mk_fun(e.s1, e.s2, std::move(body));
      }
      case Expr::Kind::CaseList: {
        ExprPtr nil_br = walk(e.b, env);
        FunEnv env2 = env;
        env2.erase(e.s1);
        env2.erase(e.s2);
        ExprPtr cons_br = walk(e.c, env2);
        if (nil_br == e.b && cons_br == e.c) return ep;
        return mk_case_list(e.a, std::move(nil_br), e.s1, e.s2, std::move(cons_br));
      }
      case Expr::Kind::CasePair: {
        FunEnv env2 = env;
        env2.erase(e.s1);
        env2.erase(e.s2);
        ExprPtr body = walk(e.b, env2);
        if (body == e.b) return ep;
        return mk_case_pair(e.a, e.s1, e.s2, std::move(body));
      }
      case Expr::Kind::Cond: {
        ExprPtr t = walk(e.b, env);
        ExprPtr f = walk(e.c, env);
        if (t == e.b && f == e.c) return ep;
        return mk_cond(e.a, std::move(t), std::move(f));
      }
      case Expr::Kind::Tick: {
        ExprPtr body = walk(e.a, env);
        if (body == e.a) return ep;
        return mk_tick(e.cost, std::move(body));
      }
      case Expr::Kind::Cons:
      case Expr::Kind::Pair:
        return ep;
    }
    return ep;
  }
};

}  // namespace

ExprPtr expand_higher_order(ExprPtr root) {
  for (int pass = 0; pass < 64; ++pass) {
    Expander ex;
    FunEnv env;
    ExprPtr next = ex.walk(root, env);
    if (!ex.changed) return next;
    root = std::move(next);
  }
  throw ExpandError("higher-order expansion did not terminate");
}

}  // namespace lincost
