#include "lincost/ast.hpp"

#include <sstream>
#include <vector>

namespace lincost {

ValuePtr mk_vbool(bool b) {
  Value v;
  v.kind = Value::Kind::Bool;
  v.bval = b;
  return std::make_shared<Value>(std::move(v));
}

ValuePtr mk_vnil() {
  Value v;
  v.kind = Value::Kind::Nil;
  return std::make_shared<Value>(std::move(v));
}

ValuePtr mk_vcons(ValuePtr h, ValuePtr t) {
  Value v;
  v.kind = Value::Kind::Cons;
  v.v1 = std::move(h);
  v.v2 = std::move(t);
  return std::make_shared<Value>(std::move(v));
}

ValuePtr mk_vpair(ValuePtr a, ValuePtr b) {
  Value v;
  v.kind = Value::Kind::Pair;
  v.v1 = std::move(a);
  v.v2 = std::move(b);
  return std::make_shared<Value>(std::move(v));
}

ValuePtr mk_vclosure(Env captured, std::string self, std::string arg, ExprPtr body) {
  // Closures capture only variables free in their body.
  auto fv = free_vars(*body);
  fv.erase(self);
  fv.erase(arg);
  Env restricted;
  for (const auto& name : fv) {
    auto it = captured.find(name);
    if (it != captured.end()) restricted.emplace(*it);
  }
  Value v;
  v.kind = Value::Kind::Closure;
  v.env = std::make_shared<Env>(std::move(restricted));
  v.self = std::move(self);
  v.arg = std::move(arg);
  v.body = std::move(body);
  return std::make_shared<Value>(std::move(v));
}

bool value_equal(const ValuePtr& a, const ValuePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Value::Kind::Bool: return a->bval == b->bval;
    case Value::Kind::Nil: return true;
    case Value::Kind::Cons:
    case Value::Kind::Pair:
      return value_equal(a->v1, b->v1) && value_equal(a->v2, b->v2);
    case Value::Kind::Closure:
      return a->self == b->self && a->arg == b->arg && expr_equal(*a->body, *b->body);
  }
  return false;
}

std::string value_str(const ValuePtr& v) {
  switch (v->kind) {
    case Value::Kind::Bool: return v->bval ? "true" : "false";
    case Value::Kind::Nil: return "[]";
    case Value::Kind::Cons: {
      std::string out = "[";
      const Value* cur = v.get();
      bool first = true;
      while (cur->kind == Value::Kind::Cons) {
        if (!first) out += ", ";
        out += value_str(cur->v1);
        first = false;
        cur = cur->v2.get();
      }
      if (cur->kind != Value::Kind::Nil) out += " | " + value_str(ValuePtr(v, cur));
      return out + "]";
    }
    case Value::Kind::Pair:
      return "(" + value_str(v->v1) + ", " + value_str(v->v2) + ")";
    case Value::Kind::Closure:
      return "<fun " + v->self + ">";
  }
  return "?";
}

ValuePtr mk_vlist(const std::vector<ValuePtr>& elems) {
  ValuePtr out = mk_vnil();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) out = mk_vcons(*it, out);
  return out;
}

long list_length(const ValuePtr& v) {
  long n = 0;
  const Value* cur = v.get();
  while (cur->kind == Value::Kind::Cons) {
    ++n;
    cur = cur->v2.get();
  }
  if (cur->kind != Value::Kind::Nil) throw LangError("list_length: not a list");
  return n;
}

namespace {

void free_vars_rec(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  auto use = [&](const std::string& n) {
    if (!bound.count(n)) out.insert(n);
  };
  switch (e.kind) {
    case Expr::Kind::Bool:
    case Expr::Kind::Nil:
      return;
    case Expr::Kind::Var:
      use(e.s1);
      return;
    case Expr::Kind::Cond:
      free_vars_rec(*e.a, bound, out);
      free_vars_rec(*e.b, bound, out);
      free_vars_rec(*e.c, bound, out);
      return;
    case Expr::Kind::Cons:
    case Expr::Kind::App:
    case Expr::Kind::Pair:
      free_vars_rec(*e.a, bound, out);
      free_vars_rec(*e.b, bound, out);
      return;
    case Expr::Kind::CaseList: {
      free_vars_rec(*e.a, bound, out);
      free_vars_rec(*e.b, bound, out);
      bool h = bound.insert(e.s1).second;
      bool t = bound.insert(e.s2).second;
      free_vars_rec(*e.c, bound, out);
      if (h) bound.erase(e.s1);
      if (t) bound.erase(e.s2);
      return;
    }
    case Expr::Kind::CasePair: {
      free_vars_rec(*e.a, bound, out);
      bool x = bound.insert(e.s1).second;
      bool y = bound.insert(e.s2).second;
      free_vars_rec(*e.b, bound, out);
      if (x) bound.erase(e.s1);
      if (y) bound.erase(e.s2);
      return;
    }
    case Expr::Kind::Let: {
      free_vars_rec(*e.a, bound, out);
      bool x = bound.insert(e.s1).second;
      free_vars_rec(*e.b, bound, out);
      if (x) bound.erase(e.s1);
      return;
    }
    case Expr::Kind::Fun: {
      bool f = bound.insert(e.s1).second;
      bool x = bound.insert(e.s2).second;
      free_vars_rec(*e.a, bound, out);
      if (f) bound.erase(e.s1);
      if (x) bound.erase(e.s2);
      return;
    }
    case Expr::Kind::Tick:
      free_vars_rec(*e.a, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound, out;
  free_vars_rec(e, bound, out);
  return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  auto sub = [](const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    return expr_equal(*x, *y);
  };
  return a.bval == b.bval && a.s1 == b.s1 && a.s2 == b.s2 && a.cost == b.cost &&
         sub(a.a, b.a) && sub(a.b, b.b) && sub(a.c, b.c);
}

namespace {

bool is_var(const ExprPtr& e) { return e && e->kind == Expr::Kind::Var; }

}  // namespace

bool is_let_normal(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Bool:
    case Expr::Kind::Nil:
    case Expr::Kind::Var:
      return true;
    case Expr::Kind::Cond:
      return is_var(e.a) && is_let_normal(*e.b) && is_let_normal(*e.c);
    case Expr::Kind::Cons:
    case Expr::Kind::App:
    case Expr::Kind::Pair:
      return is_var(e.a) && is_var(e.b);
    case Expr::Kind::CaseList:
      return is_var(e.a) && is_let_normal(*e.b) && is_let_normal(*e.c);
    case Expr::Kind::CasePair:
      return is_var(e.a) && is_let_normal(*e.b);
    case Expr::Kind::Let:
      return is_let_normal(*e.a) && is_let_normal(*e.b);
    case Expr::Kind::Fun:
      return is_let_normal(*e.a);
    case Expr::Kind::Tick:
      return is_let_normal(*e.a);
  }
  return false;
}

namespace {

// Precedence: atoms > application > cons > everything else.
void pp(const Expr& e, std::ostream& os, int depth, int prec);

void pp_atom(const Expr& e, std::ostream& os, int depth) { pp(e, os, depth, 2); }

void pp(const Expr& e, std::ostream& os, int depth, int prec) {
  auto paren = [&](int needed, auto body) {
    if (prec > needed) {
      os << "(";
      body();
      os << ")";
    } else {
      body();
    }
  };
  switch (e.kind) {
    case Expr::Kind::Bool:
      os << (e.bval ? "true" : "false");
      return;
    case Expr::Kind::Nil:
      os << "[]";
      return;
    case Expr::Kind::Var:
      os << e.s1;
      return;
    case Expr::Kind::App:
      paren(1, [&] {
        pp(*e.a, os, depth, 1);
        os << " ";
        pp_atom(*e.b, os, depth);
      });
      return;
    case Expr::Kind::Cons:
      paren(0, [&] {
        pp(*e.a, os, depth, 1);
        os << "::";
        pp(*e.b, os, depth, 0);
      });
      return;
    case Expr::Kind::Pair:
      os << "(";
      pp(*e.a, os, depth, -1);
      os << ", ";
      pp(*e.b, os, depth, -1);
      os << ")";
      return;
    case Expr::Kind::Cond:
      paren(-1, [&] {
        os << "if ";
        pp(*e.a, os, depth, -1);
        os << " then ";
        pp(*e.b, os, depth, -1);
        os << " else ";
        pp(*e.c, os, depth, -1);
      });
      return;
    case Expr::Kind::Let:
      paren(-1, [&] {
        os << "let " << e.s1 << " = ";
        pp(*e.a, os, depth, -1);
        os << " in\n" << std::string(2 * depth, ' ');
        pp(*e.b, os, depth, -1);
      });
      return;
    case Expr::Kind::Fun:
      paren(-1, [&] {
        os << "fun " << e.s1 << " " << e.s2 << " = ";
        pp(*e.a, os, depth + 1, -1);
      });
      return;
    case Expr::Kind::Tick:
      paren(-1, [&] {
        os << "tick " << rat_str(e.cost) << " in ";
        pp(*e.a, os, depth, -1);
      });
      return;
    case Expr::Kind::CaseList:
      paren(-1, [&] {
        os << "case ";
        pp(*e.a, os, depth, -1);
        os << " of\n" << std::string(2 * (depth + 1), ' ') << "| [] -> ";
        pp(*e.b, os, depth + 1, -1);
        os << "\n" << std::string(2 * (depth + 1), ' ') << "| " << e.s1 << "::" << e.s2
           << " -> ";
        pp(*e.c, os, depth + 1, -1);
      });
      return;
    case Expr::Kind::CasePair:
      paren(-1, [&] {
        os << "case ";
        pp(*e.a, os, depth, -1);
        os << " of (" << e.s1 << ", " << e.s2 << ") -> ";
        pp(*e.b, os, depth, -1);
      });
      return;
  }
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::ostringstream os;
  pp(e, os, 0, -1);
  return os.str();
}

}  // namespace lincost
