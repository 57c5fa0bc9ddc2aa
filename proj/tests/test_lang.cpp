#include <doctest.h>

#include "lincost/eval.hpp"
#include "lincost/infer.hpp"
#include "lincost/normalize.hpp"
#include "lincost/parser.hpp"
#include "lincost/wellformed.hpp"
#include "testutil.hpp"

using namespace lincost;
using namespace lincost::testutil;

TEST_CASE("parse literals and variables") {
  ExprPtr e = parse("true");
  CHECK(e->kind == Expr::Kind::Bool);
  CHECK(e->bval);
  CHECK(parse("false")->bval == false);
  CHECK(parse("[]")->kind == Expr::Kind::Nil);
}

TEST_CASE("parse the half listing") {
  ExprPtr e = parse_program(kHalfSrc);
  // let half = fun half lst = case ... in half
  REQUIRE(e->kind == Expr::Kind::Let);
  CHECK(e->s1 == "half");
  const Expr& fn = *e->a;
  REQUIRE(fn.kind == Expr::Kind::Fun);
  CHECK(fn.s1 == "half");
  CHECK(fn.s2 == "lst");
  const Expr& outer = *fn.a;
  REQUIRE(outer.kind == Expr::Kind::CaseList);
  CHECK(outer.a->s1 == "lst");
  CHECK(outer.b->kind == Expr::Kind::Nil);
  const Expr& inner = *outer.c;
  REQUIRE(inner.kind == Expr::Kind::CaseList);
  CHECK(inner.s1 == "x2");
  CHECK(inner.s2 == "xs2");
  const Expr& let = *inner.c;
  REQUIRE(let.kind == Expr::Kind::Let);
  CHECK(let.s1 == "tmp");
  CHECK(let.a->kind == Expr::Kind::App);
  CHECK(let.b->kind == Expr::Kind::Cons);
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parse("let x ="), ParseError);
  try {
    parse("let x =");
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
    CHECK(std::string(e.what()).find("end of input") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_program("fun f x = y"), ParseError);  // unbound variable
  CHECK_THROWS_AS(parse("fun f x = %bad"), ParseError);       // reserved character
}

TEST_CASE("let_normalize produces let-normal form") {
  // x::dbl(round(half xs)) becomes a chain of lets
  ExprPtr e = parse_program(kRoundSrc);
  CHECK_FALSE(is_let_normal(*e));
  ExprPtr n = let_normalize(*e);
  CHECK(is_let_normal(*n));
}

TEST_CASE("let_normalize is a fixpoint on normal terms") {
  ExprPtr e = let_normalize(*parse_program(kHalfSrc));
  ExprPtr again = let_normalize(*e);
  CHECK(expr_equal(*e, *again));
}

TEST_CASE("normalization preserves evaluation") {
  // (f x)::(g y) with sample environments
  std::string src = R"(
fun f l = case l of | [] -> [] | h::t -> t
fun g l = case l of | [] -> false::[] | h::t -> l
fun test p = case p of (x, y) -> (f x)::(g y)::[]
)";
  ExprPtr e = parse_program(src);
  ExprPtr n = let_normalize(*e);
  CHECK(is_let_normal(*n));
  auto g = rng();
  for (int i = 0; i < 50; ++i) {
    ValuePtr input = mk_vpair(bool_list(g, 5), bool_list(g, 5));
    ValuePtr v1 = apply_closure(evaluate({}, *e), input);
    ValuePtr v2 = apply_closure(evaluate({}, *n), input);
    CHECK(value_equal(v1, v2));
  }
}

TEST_CASE("shadowing binders are renamed away") {
  ExprPtr e = parse("let x = true::[] in let x = x in x");
  ExprPtr n = let_normalize(*e);
  CHECK(is_let_normal(*n));
  CHECK(value_equal(evaluate({}, *e), evaluate({}, *n)));
}

TEST_CASE("evaluate: half of a 5-element list keeps elements 1 and 3") {
  Program p = load(kHalfSrc);
  ValuePtr fn = evaluate({}, *p.root);
  ValuePtr in = parse_value("[true, false, true, false, true]");
  CHECK(value_str(apply_closure(fn, in)) == "[true, true]");
  ValuePtr in2 = parse_value("[true, false, false, true]");
  CHECK(value_str(apply_closure(fn, in2)) == "[true, false]");
}

TEST_CASE("evaluate: id of nil is nil") {
  Program p = load("fun id l = case l of | [] -> [] | h::t -> let r = id t in h::r");
  ValuePtr out = apply_closure(evaluate({}, *p.root), mk_vnil());
  CHECK(out->kind == Value::Kind::Nil);
}

TEST_CASE("evaluate: applying a non-closure fails") {
  ExprPtr e = let_normalize(*parse("let f = true in f f"));
  CHECK_THROWS_AS(evaluate({}, *e), EvalError);
}

TEST_CASE("evaluate: step budget is an explicit error") {
  Program p = load("fun f x = f x");
  ValuePtr fn = evaluate({}, *p.root);
  CHECK_THROWS_AS(apply_closure(fn, mk_vnil(), 10000), BudgetExceeded);
}

TEST_CASE("evaluate_with_cost accumulates net tick cost") {
  Program p = load(kIdTickSrc);
  ValuePtr fn = evaluate({}, *p.root);
  Env env = {{"id", fn}, {"l", parse_value("[true, true, false]")}};
  ExprPtr call = let_normalize(*parse("id l"));
  auto [v, cost] = evaluate_with_cost(env, *call);
  CHECK(cost == Rat(3));  // one tick per element
  CHECK(list_length(v) == 3);

  ExprPtr neg = let_normalize(*parse("tick 5 in tick -3/2 in true"));
  auto [v2, cost2] = evaluate_with_cost({}, *neg);
  CHECK(cost2 == Rat(7, 2));
}

TEST_CASE("evaluation is deterministic") {
  Program p = load(kRoundSrc);
  ValuePtr fn = evaluate({}, *p.root);
  auto g = rng();
  for (int i = 0; i < 20; ++i) {
    ValuePtr in = bool_list(g, 10);
    CHECK(value_equal(apply_closure(fn, in), apply_closure(fn, in)));
  }
}

TEST_CASE("parser round-trips pretty printed sources") {
  for (const std::string& src :
       {kHalfSrc, kRoundSrc, kIdTickSrc, std::string("fun f p = case p of (x, y) -> (y, x)")}) {
    ExprPtr e = parse_program(src);
    ExprPtr back = parse(pretty_print(*e));
    CHECK(expr_equal(*e, *back));
    ExprPtr n = let_normalize(*e);
    CHECK(expr_equal(*n, *parse(pretty_print(*n))));
  }
}

TEST_CASE("typecheck resolves corpus-style types") {
  Program p = load(kHalfSrc);
  REQUIRE(p.funs.size() == 1);
  CHECK(p.funs[0].arg.kind == CfType::Kind::List);
  CHECK(p.funs[0].ret.kind == CfType::Kind::List);

  Program q = load("fun swap p = case p of (x, y) -> (y, x)");
  CHECK(q.funs[0].arg.kind == CfType::Kind::Pair);

  CHECK_THROWS_AS(load("fun f x = if x then x::[] else x"), TypeError);
}

TEST_CASE("check_wf structural rules") {
  Basis b = Basis::poly(2);
  CHECK(check_wf(parse_value("[true, false]"), CfType::list(CfType::boolean()), b));
  CHECK_FALSE(check_wf(mk_vnil(), CfType::boolean(), b));
  CHECK_FALSE(check_wf(mk_vbool(true), CfType::list(CfType::boolean()), b));
  CHECK(check_wf(parse_value("([true], (false, []))"),
                 CfType::pair(CfType::list(CfType::abstract()),
                              CfType::pair(CfType::boolean(), CfType::list(CfType::abstract()))),
                 b));
}

TEST_CASE("check_wf closure re-derives at the annotated type (V-Fun)") {
  Program p = load(kHalfSrc);
  ValuePtr closure = evaluate({}, *p.root);
  auto reports = infer_program(p, Basis::poly(2));
  auto m = reports.at("half").matrix;
  REQUIRE(m);
  CfType good = CfType::fun(CfType::list(CfType::abstract()), CfType::list(CfType::abstract()), m);
  CHECK(check_wf(closure, good, Basis::poly(2)));
  // A matrix the body cannot justify is rejected.
  auto bad = std::make_shared<PMat>(*m);
  bad->set(Index::deg({"r"}, 2), Index::deg({"a"}, 2), Scalar(Rat(5)));
  CfType bad_t =
      CfType::fun(CfType::list(CfType::abstract()), CfType::list(CfType::abstract()), bad);
  CHECK_FALSE(check_wf(closure, bad_t, Basis::poly(2)));
  // No matrix at all: the premise cannot be established.
  CfType no_mat = CfType::fun(CfType::list(CfType::abstract()), CfType::list(CfType::abstract()));
  CHECK_FALSE(check_wf(closure, no_mat, Basis::poly(2)));
}

TEST_CASE("values print and parse") {
  ValuePtr v = parse_value("([true, false], [])");
  CHECK(value_str(v) == "([true, false], [])");
  CHECK(list_length(v->v1) == 2);
}
