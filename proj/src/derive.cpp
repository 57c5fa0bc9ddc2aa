#include "lincost/derive.hpp"

namespace lincost {

namespace {

const std::string kRet = "r";
const std::string kArg = "a";

CfType join_types(const CfType& a, const CfType& b) {
  if (a.kind == CfType::Kind::Abstract) return b;
  if (b.kind == CfType::Kind::Abstract) return a;
  if (a.kind != b.kind) throw DeriveError("branch type mismatch");
  switch (a.kind) {
    case CfType::Kind::Bool:
      return a;
    case CfType::Kind::List:
      return CfType::list(join_types(*a.a, *b.a));
    case CfType::Kind::Pair:
      return CfType::pair(join_types(*a.a, *b.a), join_types(*a.b, *b.b));
    case CfType::Kind::Fun:
      return a;  // matrices join by preferring the first
    default:
      return a;
  }
}

struct Deriver {
  Basis basis;
  const LiteralTypes* literals;

  IndexSet var_indices(const std::string& name, const CfType& t) const {
    return prefixed(name, indices(t, basis));
  }

  // prefix applied first (rightmost), then the path matrix.
  static DerivePath after(const DerivePath& p, const PMat& prefix,
                          std::vector<PrimOp> prefix_ops) {
    DerivePath out;
    out.mat = compose(p.mat, prefix);
    out.trace = std::move(prefix_ops);
    out.trace.insert(out.trace.end(), p.trace.begin(), p.trace.end());
    return out;
  }

  // wrap applied last (leftmost).
  static DerivePath before(const DerivePath& p, const PMat& wrap, PrimOp op) {
    DerivePath out;
    out.mat = compose(wrap, p.mat);
    out.trace = p.trace;
    out.trace.push_back(op);
    return out;
  }

  DeriveResult go(const TypeContext& ctx, const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Bool: {
        DeriveResult r;
        r.type = CfType::boolean();
        r.s_set.push_back(DerivePath{identity(), {}});
        return r;
      }
      case Expr::Kind::Var: {
        const CfType& t = type_of(ctx, e.s1);
        DeriveResult r;
        r.type = t;
        DerivePath p;
        p.mat = move(e.s1, kRet, indices(t, basis));
        p.trace.push_back({PrimOp::Kind::Move, e.s1, kRet});
        r.s_set.push_back(std::move(p));
        return r;
      }
      case Expr::Kind::Nil: {
        DeriveResult r;
        r.type = CfType::list(CfType::abstract());
        DerivePath p;
        p.mat = nil_map(kRet, indices(r.type, basis), context_indices(ctx, basis));
        p.trace.push_back({PrimOp::Kind::Nil, kRet, ""});
        r.s_set.push_back(std::move(p));
        return r;
      }
      case Expr::Kind::Cons: {
        const CfType& th = type_of(ctx, e.a->s1);
        const CfType& tt = type_of(ctx, e.b->s1);
        if (tt.kind != CfType::Kind::List) throw DeriveError("cons onto non-list");
        DeriveResult r;
        r.type = join_types(tt, CfType::list(th));
        DerivePath p;
        p.mat = unshift(e.b->s1, kRet, basis);
        p.trace.push_back({PrimOp::Kind::Unshift, e.b->s1, kRet});
        r.s_set.push_back(std::move(p));
        return r;
      }
      case Expr::Kind::Pair: {
        const CfType& tx = type_of(ctx, e.a->s1);
        const CfType& ty = type_of(ctx, e.b->s1);
        DeriveResult r;
        r.type = CfType::pair(tx, ty);
        DerivePath p;
        p.mat = pair_intro(e.a->s1, tx, e.b->s1, ty);
        p.trace.push_back({PrimOp::Kind::Move, e.a->s1, kRet});
        p.trace.push_back({PrimOp::Kind::Move, e.b->s1, kRet});
        r.s_set.push_back(std::move(p));
        return r;
      }
      case Expr::Kind::Cond: {
        DeriveResult r1 = go(ctx, *e.b);
        DeriveResult r2 = go(ctx, *e.c);
        DeriveResult r;
        r.type = join_types(r1.type, r2.type);
        r.s_set = std::move(r1.s_set);
        r.s_set.insert(r.s_set.end(), r2.s_set.begin(), r2.s_set.end());
        r.c_set = std::move(r1.c_set);
        r.c_set.insert(r.c_set.end(), r2.c_set.begin(), r2.c_set.end());
        return r;
      }
      case Expr::Kind::Tick:
        return go(ctx, *e.a);  // cost-free types ignore ticks
      case Expr::Kind::App: {
        const std::string& f = e.a->s1;
        const std::string& x = e.b->s1;
        const CfType& tf = type_of(ctx, f);
        if (tf.kind != CfType::Kind::Fun) throw DeriveError("application of non-function '" + f + "'");
        if (!tf.mat) throw DeriveError("no matrix available for function '" + f + "'");
        DeriveResult r;
        r.type = *tf.b;
        PMat mv = move(x, kArg, indices(*tf.a, basis));
        DerivePath p;
        p.mat = compose(*tf.mat, mv);
        p.trace.push_back({PrimOp::Kind::Move, x, kArg});
        p.trace.push_back({PrimOp::Kind::Apply, f, kRet});
        r.s_set.push_back(std::move(p));
        IndexSet keep = var_indices(x, type_of(ctx, x));
        keep.insert(Index::constant());
        DerivePath c;
        c.mat = proj(keep, context_indices(ctx, basis));
        c.trace.push_back({PrimOp::Kind::Proj, x, ""});
        r.c_set.push_back(std::move(c));
        return r;
      }
      case Expr::Kind::Let: {
        DeriveResult r1 = go(ctx, *e.a);
        TypeContext ctx2 = ctx;
        ctx2[e.s1] = r1.type;
        DeriveResult r2 = go(ctx2, *e.b);
        IndexSet x_idx = var_indices(e.s1, r1.type);
        PMat mv = move(kRet, e.s1, indices(r1.type, basis));
        PMat drop_x = zero_map(x_idx);
        IndexSet ambient = set_union(context_indices(ctx2, basis),
                                     prefixed(kRet, indices(r2.type, basis)));
        PMat keep_x = proj(x_idx, ambient);
        DeriveResult r;
        r.type = r2.type;
        for (const auto& s1 : r1.s_set) {
          DerivePath bound = after(s1, identity(), {});
          bound.mat = compose(mv, bound.mat);
          bound.trace.push_back({PrimOp::Kind::Move, kRet, e.s1});
          for (const auto& t : r2.s_set) {
            DerivePath full = after(t, bound.mat, bound.trace);
            full.mat = compose(drop_x, full.mat);
            full.trace.push_back({PrimOp::Kind::Zero, e.s1, ""});
            r.s_set.push_back(std::move(full));
          }
          for (const auto& t : r2.s_set) {
            DerivePath cpath = after(t, bound.mat, bound.trace);
            cpath.mat = compose(keep_x, cpath.mat);
            cpath.trace.push_back({PrimOp::Kind::Proj, e.s1, ""});
            r.c_set.push_back(std::move(cpath));
          }
          for (const auto& d : r2.c_set)
            r.c_set.push_back(after(d, bound.mat, bound.trace));
        }
        for (const auto& c1 : r1.c_set) r.c_set.push_back(c1);
        return r;
      }
      case Expr::Kind::CaseList: {
        const std::string& scrut = e.a->s1;
        const CfType& tl = type_of(ctx, scrut);
        if (tl.kind != CfType::Kind::List) throw DeriveError("case on non-list");
        const CfType& elem = *tl.a;
        TypeContext ctx2 = ctx;
        ctx2[e.s1] = elem;
        ctx2[e.s2] = tl;
        DeriveResult r1 = go(ctx, *e.b);
        DeriveResult r2 = go(ctx2, *e.c);

        PMat nill = nil_map(scrut, indices(tl, basis), context_indices(ctx, basis));
        std::vector<PrimOp> nil_ops{{PrimOp::Kind::Nil, scrut, ""}};

        PMat zero_h = zero_map(var_indices(e.s1, elem));
        PMat sh = shift(scrut, e.s2, basis);
        PMat pre = compose(sh, zero_h);
        std::vector<PrimOp> pre_ops{{PrimOp::Kind::Zero, e.s1, ""},
                                    {PrimOp::Kind::Shift, scrut, e.s2}};

        IndexSet ht = set_union(var_indices(e.s1, elem), var_indices(e.s2, tl));
        PMat drop_ht = zero_map(ht);
        IndexSet ambient2 = set_union(context_indices(ctx2, basis),
                                      prefixed(kRet, indices(r2.type, basis)));
        PMat keep_ht = proj(ht, ambient2);

        DeriveResult r;
        r.type = join_types(r1.type, r2.type);
        for (const auto& s : r1.s_set) r.s_set.push_back(after(s, nill, nil_ops));
        for (const auto& t : r2.s_set) {
          DerivePath p = after(t, pre, pre_ops);
          p.mat = compose(drop_ht, p.mat);
          p.trace.push_back({PrimOp::Kind::Zero, e.s1, ""});
          p.trace.push_back({PrimOp::Kind::Zero, e.s2, ""});
          r.s_set.push_back(std::move(p));
        }
        for (const auto& c : r1.c_set) r.c_set.push_back(after(c, nill, nil_ops));
        for (const auto& t : r2.s_set) {
          DerivePath p = after(t, pre, pre_ops);
          p.mat = compose(keep_ht, p.mat);
          p.trace.push_back({PrimOp::Kind::Proj, e.s1, e.s2});
          r.c_set.push_back(std::move(p));
        }
        for (const auto& d : r2.c_set) r.c_set.push_back(after(d, pre, pre_ops));
        return r;
      }
      case Expr::Kind::CasePair: {
        const std::string& scrut = e.a->s1;
        const CfType& tp = type_of(ctx, scrut);
        if (tp.kind != CfType::Kind::Pair) throw DeriveError("case on non-pair");
        TypeContext ctx2 = ctx;
        ctx2[e.s1] = *tp.a;
        ctx2[e.s2] = *tp.b;
        DeriveResult r2 = go(ctx2, *e.b);
        PMat pre = pair_elim(scrut, tp, e.s1, e.s2);
        std::vector<PrimOp> pre_ops{{PrimOp::Kind::Move, scrut, e.s1}};

        IndexSet xy = set_union(var_indices(e.s1, *tp.a), var_indices(e.s2, *tp.b));
        PMat drop_xy = zero_map(xy);
        IndexSet ambient2 = set_union(context_indices(ctx2, basis),
                                      prefixed(kRet, indices(r2.type, basis)));
        PMat keep_xy = proj(xy, ambient2);

        DeriveResult r;
        r.type = r2.type;
        for (const auto& t : r2.s_set) {
          DerivePath p = after(t, pre, pre_ops);
          p.mat = compose(drop_xy, p.mat);
          p.trace.push_back({PrimOp::Kind::Zero, e.s1, e.s2});
          r.s_set.push_back(std::move(p));
        }
        for (const auto& t : r2.s_set) {
          DerivePath p = after(t, pre, pre_ops);
          p.mat = compose(keep_xy, p.mat);
          p.trace.push_back({PrimOp::Kind::Proj, e.s1, e.s2});
          r.c_set.push_back(std::move(p));
        }
        for (const auto& d : r2.c_set) r.c_set.push_back(after(d, pre, pre_ops));
        return r;
      }
      case Expr::Kind::Fun: {
        auto it = literals->find(&e);
        if (it == literals->end())
          throw DeriveError("nested function literal without a registered type");
        DeriveResult r;
        r.type = it->second;
        r.s_set.push_back(DerivePath{identity(), {}});
        return r;
      }
    }
    throw DeriveError("derive: bad expression");
  }

  static const CfType& type_of(const TypeContext& ctx, const std::string& x) {
    auto it = ctx.find(x);
    if (it == ctx.end()) throw DeriveError("unbound variable '" + x + "'");
    return it->second;
  }

  PMat pair_intro(const std::string& x, const CfType& tx, const std::string& y,
                  const CfType& ty) const {
    PMat m;
    for (const auto& i : indices(tx, basis)) {
      Index src = i.with_prefix(x);
      Index dst = i.with_prefix("1").with_prefix(kRet);
      m.rows.insert(src);
      m.rows.insert(dst);
      m.cols.insert(src);
      m.entries[{dst, src}] = Scalar(Rat(1));
    }
    for (const auto& i : indices(ty, basis)) {
      Index src = i.with_prefix(y);
      Index dst = i.with_prefix("2").with_prefix(kRet);
      m.rows.insert(src);
      m.rows.insert(dst);
      m.cols.insert(src);
      m.entries[{dst, src}] = Scalar(Rat(1));
    }
    return m;
  }

  PMat pair_elim(const std::string& p, const CfType& tp, const std::string& x,
                 const std::string& y) const {
    PMat m;
    for (const auto& i : indices(*tp.a, basis)) {
      Index src = i.with_prefix("1").with_prefix(p);
      Index dst = i.with_prefix(x);
      m.rows.insert(src);
      m.rows.insert(dst);
      m.cols.insert(src);
      m.entries[{dst, src}] = Scalar(Rat(1));
    }
    for (const auto& i : indices(*tp.b, basis)) {
      Index src = i.with_prefix("2").with_prefix(p);
      Index dst = i.with_prefix(y);
      m.rows.insert(src);
      m.rows.insert(dst);
      m.cols.insert(src);
      m.entries[{dst, src}] = Scalar(Rat(1));
    }
    return m;
  }
};

}  // namespace

DeriveResult derive(const TypeContext& ctx, const Expr& e, const Basis& basis,
                    const LiteralTypes& literal_types) {
  if (!is_let_normal(e)) throw DeriveError("expression is not let-normal");
  Deriver d{basis, &literal_types};
  return d.go(ctx, e);
}

}  // namespace lincost
