#include "lincost/normalize.hpp"

#include <functional>

namespace lincost {

namespace {

struct Normalizer {
  long counter = 0;
  std::set<std::string> in_scope;

  std::string fresh() {
    std::string name;
    do {
      name = "%" + std::to_string(counter++);
    } while (in_scope.count(name));
    return name;
  }

  // Renaming applied to variable uses (alpha-renaming of shadowing binders).
  using Renames = std::map<std::string, std::string>;

  std::string bind(const std::string& name, Renames& rn) {
    std::string actual = name;
    if (in_scope.count(name)) {
      actual = fresh();
      rn[name] = actual;
    } else {
      rn.erase(name);
    }
    in_scope.insert(actual);
    return actual;
  }

  void unbind(const std::string& actual) { in_scope.erase(actual); }

  std::string use(const std::string& name, const Renames& rn) const {
    auto it = rn.find(name);
    return it == rn.end() ? name : it->second;
  }

  // Normalizes e; positions that must be variables are bound via `atom`.
  ExprPtr norm(const Expr& e, Renames& rn) {
    switch (e.kind) {
      case Expr::Kind::Bool:
      case Expr::Kind::Nil:
        return mk_expr(e);
      case Expr::Kind::Var:
        return mk_var(use(e.s1, rn));
      case Expr::Kind::Tick:
        return mk_tick(e.cost, norm(*e.a, rn));
      case Expr::Kind::Cond:
        return atomize(*e.a, rn, [&](const std::string& s) {
          return mk_cond(mk_var(s), norm(*e.b, rn), norm(*e.c, rn));
        });
      case Expr::Kind::Cons:
        return atomize(*e.a, rn, [&](const std::string& h) {
          return atomize(*e.b, rn, [&](const std::string& t) {
            return mk_cons(mk_var(h), mk_var(t));
          });
        });
      case Expr::Kind::Pair:
        return atomize(*e.a, rn, [&](const std::string& x) {
          return atomize(*e.b, rn, [&](const std::string& y) {
            return mk_pair(mk_var(x), mk_var(y));
          });
        });
      case Expr::Kind::App:
        return atomize(*e.a, rn, [&](const std::string& f) {
          return atomize(*e.b, rn, [&](const std::string& x) {
            return mk_app(mk_var(f), mk_var(x));
          });
        });
      case Expr::Kind::CaseList:
        return atomize(*e.a, rn, [&](const std::string& scrut) {
          ExprPtr nil_br = norm(*e.b, rn);
          Renames rn2 = rn;
          std::string h = bind(e.s1, rn2);
          std::string t = bind(e.s2, rn2);
          ExprPtr cons_br = norm(*e.c, rn2);
          unbind(h);
          unbind(t);
          return mk_case_list(mk_var(scrut), std::move(nil_br), h, t, std::move(cons_br));
        });
      case Expr::Kind::CasePair:
        return atomize(*e.a, rn, [&](const std::string& scrut) {
          Renames rn2 = rn;
          std::string x = bind(e.s1, rn2);
          std::string y = bind(e.s2, rn2);
          ExprPtr body = norm(*e.b, rn2);
          unbind(x);
          unbind(y);
          return mk_case_pair(mk_var(scrut), x, y, std::move(body));
        });
      case Expr::Kind::Let: {
        ExprPtr bound = norm(*e.a, rn);
        Renames rn2 = rn;
        std::string x = bind(e.s1, rn2);
        ExprPtr body = norm(*e.b, rn2);
        unbind(x);
        return mk_let(x, std::move(bound), std::move(body));
      }
      case Expr::Kind::Fun: {
        Renames rn2 = rn;
        std::string f = bind(e.s1, rn2);
        std::string x = bind(e.s2, rn2);
        ExprPtr body = norm(*e.a, rn2);
        unbind(f);
        unbind(x);
        return mk_fun(f, x, std::move(body));
      }
    }
    throw LangError("let_normalize: bad expression");
  }

  // Normalizes e to a variable, let-binding unless already one.
  ExprPtr atomize(const Expr& e, Renames& rn,
                  const std::function<ExprPtr(const std::string&)>& k) {
    if (e.kind == Expr::Kind::Var) return k(use(e.s1, rn));
    ExprPtr bound = norm(e, rn);
    std::string tmp = fresh();
    in_scope.insert(tmp);
    ExprPtr body = k(tmp);
    in_scope.erase(tmp);
    return mk_let(tmp, std::move(bound), std::move(body));
  }
};

}  // namespace

ExprPtr let_normalize(const Expr& e) {
  Normalizer n;
  for (const auto& v : free_vars(e)) n.in_scope.insert(v);
  Normalizer::Renames rn;
  return n.norm(e, rn);
}

}  // namespace lincost
