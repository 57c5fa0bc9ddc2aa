#include <doctest.h>

#include "lincost/basis.hpp"
#include "testutil.hpp"

using namespace lincost;
using namespace lincost::testutil;

namespace {

// Independent reference for Stirling numbers via the recurrence
// S(n+1, k+1) = (k+1) S(n, k+1) + S(n, k), memoized.
Rat stirling_oracle(long n, long k) {
  static std::map<std::pair<long, long>, Rat> memo;
  if (n == 0 && k == 0) return 1;
  if (n <= 0 || k <= 0) return 0;
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;
  Rat v = Rat(k) * stirling_oracle(n - 1, k) + stirling_oracle(n - 1, k - 1);
  memo[{n, k}] = v;
  return v;
}

AnnVec scaled_sum(const Rat& a, const AnnVec& p, const Rat& b, const AnnVec& q) {
  AnnVec out;
  for (const auto& [i, v] : p.entries) out.set(i, a * v);
  for (const auto& [i, v] : q.entries) out.set(i, out.get(i) + b * v);
  return out;
}

}  // namespace

TEST_CASE("index sets per type") {
  CfType lb = CfType::list(CfType::boolean());
  CHECK(indices(lb, Basis::poly(2)) ==
        IndexSet{Index::deg({}, 1), Index::deg({}, 2)});
  CHECK(indices(CfType::boolean(), Basis::poly(4)).empty());
  CHECK(indices(lb, Basis::exp(3)) == IndexSet{Index::base({}, 2), Index::base({}, 3)});
  CHECK(indices(CfType::fun(lb, lb), Basis::poly(3)).empty());
  // pair components are prefixed with 1/2
  CfType pr = CfType::pair(lb, lb);
  IndexSet pi = indices(pr, Basis::poly(1));
  CHECK(pi == IndexSet{Index::deg({"1"}, 1), Index::deg({"2"}, 1)});
  // inner lists of nested lists carry no indices (shallow potential)
  CfType nested = CfType::list(lb);
  CHECK(indices(nested, Basis::poly(2)).size() == 2);
}

TEST_CASE("context index sets") {
  Basis poly2 = Basis::poly(2);
  TypeContext ctx{{"x", CfType::list(CfType::boolean())}};
  IndexSet s = context_indices(ctx, poly2);
  CHECK(s == IndexSet{Index::constant(), Index::deg({"x"}, 1), Index::deg({"x"}, 2)});

  TypeContext just_bool{{"b", CfType::boolean()}};
  CHECK(context_indices(just_bool, poly2) == IndexSet{Index::constant()});

  TypeContext two{{"x", CfType::list(CfType::boolean())},
                  {"y", CfType::list(CfType::boolean())}};
  IndexSet s2 = context_indices(two, Basis::exp(3));
  CHECK(s2.size() == 5);  // x.base2 x.base3 y.base2 y.base3 c
  CHECK(s2.count(Index::base({"y"}, 3)) == 1);
}

TEST_CASE("index string round-trip") {
  for (const Index& i : {Index::constant(), Index::deg({"x"}, 2), Index::base({"a"}, 3),
                         Index::deg({"p", "1"}, 1), Index::base({"q", "2", "1"}, 4)}) {
    CHECK(index_parse(i.str()) == i);
  }
}

TEST_CASE("binomial and Stirling values") {
  CHECK(binom(6, 2) == 15);
  CHECK(binom(5, 0) == 1);
  CHECK(binom(3, 5) == 0);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(4, 2) == stirling_oracle(4, 2));
  for (long n = 0; n <= 10; ++n) {
    Rat expect = Rat((1 << n) - 1);
    CHECK(stirling2(n + 1, 2) == expect);  // S(n+1,2) = 2^n - 1
  }
}

TEST_CASE("Pascal identity holds up to n = 30") {
  for (long n = 0; n <= 30; ++n)
    for (long k = 0; k <= n; ++k)
      CHECK(binom(n + 1, k + 1) == binom(n, k + 1) + binom(n, k));
}

TEST_CASE("Stirling recurrence holds up to n = 20") {
  for (long n = 0; n <= 20; ++n)
    for (long k = 0; k <= n; ++k) {
      CHECK(stirling2(n + 1, k + 1) == Rat(k + 1) * stirling2(n, k + 1) + stirling2(n, k));
      CHECK(stirling2(n, k) == stirling_oracle(n, k));
    }
}

TEST_CASE("potential of the worked example annotations") {
  // 3 (n 3) + (n 2) + 4 (n 1) + 5 at n = 3
  Env env{{"x", parse_value("[true, true, false]")}};
  TypeContext ctx{{"x", CfType::list(CfType::boolean())}};
  AnnVec p;
  p.set(Index::deg({"x"}, 3), 3);
  p.set(Index::deg({"x"}, 2), 1);
  p.set(Index::deg({"x"}, 1), 4);
  p.set(Index::constant(), 5);
  CHECK(potential(env, ctx, p, Basis::poly(3)) == 23);

  // 2 S(m+1,4) + 6 S(m+1,2) + 7 at m = 3
  AnnVec q;
  q.set(Index::base({"x"}, 4), 2);
  q.set(Index::base({"x"}, 3), 0);
  q.set(Index::base({"x"}, 2), 6);
  q.set(Index::constant(), 7);
  CHECK(potential(env, ctx, q, Basis::exp(4)) == 51);

  AnnVec just_c;
  just_c.set(Index::constant(), Rat(9, 2));
  CHECK(potential({}, {}, just_c, Basis::poly(1)) == Rat(9, 2));
}

TEST_CASE("potential recurses through pairs") {
  Env env{{"p", parse_value("([true, true], [false])")}};
  TypeContext ctx{{"p", CfType::pair(CfType::list(CfType::boolean()),
                                     CfType::list(CfType::boolean()))}};
  AnnVec p;
  p.set(Index::deg({"p", "1"}, 1), 3);
  p.set(Index::deg({"p", "2"}, 1), 5);
  p.set(Index::constant(), 1);
  CHECK(potential(env, ctx, p, Basis::poly(1)) == 3 * 2 + 5 * 1 + 1);
}

TEST_CASE("potential is linear in the annotation") {
  auto g = rng();
  TypeContext ctx{{"x", CfType::list(CfType::boolean())},
                  {"y", CfType::list(CfType::boolean())}};
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (const Basis& basis : {Basis::poly(3), Basis::exp(4)}) {
    for (int trial = 0; trial < 200; ++trial) {
      Env env{{"x", bool_list(g, 8)}, {"y", bool_list(g, 8)}};
      AnnVec p, q;
      for (const auto& i : context_indices(ctx, basis)) {
        p.set(i, coeff(g));
        q.set(i, coeff(g));
      }
      Rat a = coeff(g), b = coeff(g);
      Rat lhs = potential(env, ctx, scaled_sum(a, p, b, q), basis);
      Rat rhs = a * potential(env, ctx, p, basis) + b * potential(env, ctx, q, basis);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("non-list types contribute zero potential") {
  auto g = rng();
  Env env{{"b", mk_vbool(true)}, {"x", bool_list(g, 6)}};
  TypeContext ctx{{"b", CfType::boolean()}, {"x", CfType::list(CfType::boolean())}};
  AnnVec p;
  p.set(Index::deg({"x"}, 1), 2);
  TypeContext no_list{{"b", CfType::boolean()}};
  AnnVec only_c;
  CHECK(potential(env, no_list, only_c, Basis::poly(2)) == 0);
  CHECK(potential(env, ctx, p, Basis::poly(2)) == 2 * list_length(env["x"]));
}
