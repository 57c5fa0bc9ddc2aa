#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "lincost/rational.hpp"

namespace lincost {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expressions of the analyzed language. Before let-normalization the
// positions marked (v) below may hold arbitrary subexpressions; after
// normalization they hold Var nodes only.
//
//   Bool      bval
//   Cond      a = scrutinee (v), b = then, c = else
//   Nil
//   Cons      a = head (v), b = tail (v)
//   CaseList  a = scrutinee (v), b = nil branch,
//             s1/s2 = head/tail binders, c = cons branch
//   Var       s1
//   Let       s1 = binder, a = bound, b = body
//   Fun       s1 = self name, s2 = argument, a = body
//   App       a = function (v), b = argument (v)
//   Tick      cost, a = body
//   Pair      a = first (v), b = second (v)
//   CasePair  a = scrutinee (v), s1/s2 = component binders, b = body
struct Expr {
  enum class Kind {
    Bool, Cond, Nil, Cons, CaseList, Var, Let, Fun, App, Tick, Pair, CasePair
  };

  Kind kind{};
  bool bval = false;
  std::string s1, s2;
  ExprPtr a, b, c;
  Rat cost;
  int line = 0, col = 0;
};

inline ExprPtr mk_expr(Expr e) { return std::make_shared<Expr>(std::move(e)); }

inline ExprPtr mk_bool(bool v) {
  Expr e; e.kind = Expr::Kind::Bool; e.bval = v; return mk_expr(std::move(e));
}
inline ExprPtr mk_var(std::string n) {
  Expr e; e.kind = Expr::Kind::Var; e.s1 = std::move(n); return mk_expr(std::move(e));
}
inline ExprPtr mk_nil() {
  Expr e; e.kind = Expr::Kind::Nil; return mk_expr(std::move(e));
}
inline ExprPtr mk_cons(ExprPtr h, ExprPtr t) {
  Expr e; e.kind = Expr::Kind::Cons; e.a = std::move(h); e.b = std::move(t);
  return mk_expr(std::move(e));
}
inline ExprPtr mk_cond(ExprPtr s, ExprPtr t, ExprPtr f) {
  Expr e; e.kind = Expr::Kind::Cond; e.a = std::move(s); e.b = std::move(t); e.c = std::move(f);
  return mk_expr(std::move(e));
}
inline ExprPtr mk_case_list(ExprPtr scrut, ExprPtr nil_br, std::string h, std::string t,
                            ExprPtr cons_br) {
  Expr e; e.kind = Expr::Kind::CaseList;
  e.a = std::move(scrut); e.b = std::move(nil_br);
  e.s1 = std::move(h); e.s2 = std::move(t); e.c = std::move(cons_br);
  return mk_expr(std::move(e));
}
inline ExprPtr mk_let(std::string x, ExprPtr bound, ExprPtr body) {
  Expr e; e.kind = Expr::Kind::Let; e.s1 = std::move(x);
  e.a = std::move(bound); e.b = std::move(body);
  return mk_expr(std::move(e));
}
inline ExprPtr mk_fun(std::string self, std::string arg, ExprPtr body) {
  Expr e; e.kind = Expr::Kind::Fun; e.s1 = std::move(self); e.s2 = std::move(arg);
  e.a = std::move(body);
  return mk_expr(std::move(e));
}
inline ExprPtr mk_app(ExprPtr f, ExprPtr x) {
  Expr e; e.kind = Expr::Kind::App; e.a = std::move(f); e.b = std::move(x);
  return mk_expr(std::move(e));
}
inline ExprPtr mk_tick(Rat cost, ExprPtr body) {
  Expr e; e.kind = Expr::Kind::Tick; e.cost = std::move(cost); e.a = std::move(body);
  return mk_expr(std::move(e));
}
inline ExprPtr mk_pair(ExprPtr x, ExprPtr y) {
  Expr e; e.kind = Expr::Kind::Pair; e.a = std::move(x); e.b = std::move(y);
  return mk_expr(std::move(e));
}
inline ExprPtr mk_case_pair(ExprPtr scrut, std::string x, std::string y, ExprPtr body) {
  Expr e; e.kind = Expr::Kind::CasePair; e.a = std::move(scrut);
  e.s1 = std::move(x); e.s2 = std::move(y); e.b = std::move(body);
  return mk_expr(std::move(e));
}

struct Value;
using ValuePtr = std::shared_ptr<const Value>;
using Env = std::map<std::string, ValuePtr>;

struct Value {
  enum class Kind { Bool, Nil, Cons, Closure, Pair };

  Kind kind{};
  bool bval = false;
  ValuePtr v1, v2;  // cons head/tail, pair components
  // Closure: captured environment restricted to the free variables of body.
  std::shared_ptr<const Env> env;
  std::string self, arg;
  ExprPtr body;
};

ValuePtr mk_vbool(bool b);
ValuePtr mk_vnil();
ValuePtr mk_vcons(ValuePtr h, ValuePtr t);
ValuePtr mk_vpair(ValuePtr a, ValuePtr b);
ValuePtr mk_vclosure(Env captured, std::string self, std::string arg, ExprPtr body);

bool value_equal(const ValuePtr& a, const ValuePtr& b);
std::string value_str(const ValuePtr& v);

// Builds a list value from a vector of elements (front first).
ValuePtr mk_vlist(const std::vector<ValuePtr>& elems);
// Length of a list value; throws on non-list.
long list_length(const ValuePtr& v);

// Free variables of an expression.
std::set<std::string> free_vars(const Expr& e);

// Structural equality of expressions (names compared literally).
bool expr_equal(const Expr& a, const Expr& b);

// True when every grammar position restricted to variables holds a Var.
bool is_let_normal(const Expr& e);

// Canonical source rendering; parse(pretty_print(e)) is structurally e.
std::string pretty_print(const Expr& e);

struct LangError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lincost
