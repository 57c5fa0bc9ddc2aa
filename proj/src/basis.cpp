#include "lincost/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace lincost {

Basis Basis::poly(int d_max) {
  if (d_max < 1) throw LangError("polynomial basis needs d_max >= 1");
  return Basis{Kind::Polynomial, d_max};
}

Basis Basis::exp(int b_max) {
  if (b_max < 2) throw LangError("exponential basis needs b_max >= 2");
  return Basis{Kind::Exponential, b_max};
}

std::string Index::str() const {
  if (is_const()) return "c";
  std::string out;
  for (const auto& seg : path) out += seg + ".";
  out += (leaf == Leaf::Deg ? "deg" : "base") + std::to_string(level);
  return out;
}

Index index_parse(const std::string& s) {
  if (s == "c") return Index::constant();
  std::vector<std::string> segs;
  size_t start = 0;
  while (true) {
    size_t dot = s.find('.', start);
    if (dot == std::string::npos) {
      segs.push_back(s.substr(start));
      break;
    }
    segs.push_back(s.substr(start, dot - start));
    start = dot + 1;
  }
  if (segs.size() < 2) throw LangError("bad index '" + s + "'");
  std::string leaf = segs.back();
  segs.pop_back();
  Index::Leaf kind;
  size_t digits;
  if (leaf.rfind("deg", 0) == 0) {
    kind = Index::Leaf::Deg;
    digits = 3;
  } else if (leaf.rfind("base", 0) == 0) {
    kind = Index::Leaf::Base;
    digits = 4;
  } else {
    throw LangError("bad index leaf '" + leaf + "'");
  }
  int level = std::stoi(leaf.substr(digits));
  return Index{std::move(segs), kind, level};
}

IndexSet indices(const CfType& t, const Basis& basis) {
  IndexSet out;
  switch (t.kind) {
    case CfType::Kind::List:
      for (int k = basis.lo(); k <= basis.hi(); ++k) {
        if (basis.kind == Basis::Kind::Polynomial)
          out.insert(Index::deg({}, k));
        else
          out.insert(Index::base({}, k));
      }
      return out;
    case CfType::Kind::Pair: {
      for (const auto& i : indices(*t.a, basis)) out.insert(i.with_prefix("1"));
      for (const auto& i : indices(*t.b, basis)) out.insert(i.with_prefix("2"));
      return out;
    }
    default:
      return out;  // Bool, Fun, Abstract carry no indices
  }
}

IndexSet prefixed(const std::string& name, const IndexSet& s) {
  IndexSet out;
  for (const auto& i : s) out.insert(i.with_prefix(name));
  return out;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

IndexSet context_indices(const TypeContext& ctx, const Basis& basis) {
  IndexSet out;
  out.insert(Index::constant());
  for (const auto& [name, t] : ctx)
    for (const auto& i : indices(t, basis)) out.insert(i.with_prefix(name));
  return out;
}

Rat binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rat(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(out);
}

Rat stirling2(long n, long k) {
  if (n < 0 || k < 0) return Rat(0);
  if (n == 0 && k == 0) return Rat(1);
  if (n == 0 || k == 0) return Rat(0);
  if (k > n) return Rat(0);
  // S(n+1, k+1) = (k+1) S(n, k+1) + S(n, k), row by row.
  std::vector<mpz_class> row(static_cast<size_t>(n) + 1);
  row[0] = 1;  // row for n = 0
  for (long i = 1; i <= n; ++i) {
    for (long j = std::min(i, k); j >= 1; --j)
      row[static_cast<size_t>(j)] = j * row[static_cast<size_t>(j)] + row[static_cast<size_t>(j) - 1];
    row[0] = 0;
  }
  return Rat(row[static_cast<size_t>(k)]);
}

namespace {

// Annotation entries of p reachable under path segment `seg`.
AnnVec select_component(const AnnVec& p, const std::string& seg) {
  AnnVec out;
  for (const auto& [idx, v] : p.entries) {
    if (!idx.is_const() && idx.root() == seg) {
      Index inner = idx;
      inner.path.erase(inner.path.begin());
      out.entries[inner] = v;
    }
  }
  return out;
}

}  // namespace

Rat potential_of_value(const ValuePtr& v, const CfType& t, const AnnVec& p,
                       const Basis& basis) {
  switch (t.kind) {
    case CfType::Kind::List: {
      long n = list_length(v);
      Rat total(0);
      for (int k = basis.lo(); k <= basis.hi(); ++k) {
        Index idx = basis.kind == Basis::Kind::Polynomial ? Index::deg({}, k)
                                                          : Index::base({}, k);
        Rat coeff = p.get(idx);
        if (coeff == 0) continue;
        total += coeff * (basis.kind == Basis::Kind::Polynomial ? binom(n, k)
                                                                : stirling2(n + 1, k));
      }
      return total;
    }
    case CfType::Kind::Pair: {
      if (v->kind != Value::Kind::Pair) throw LangError("potential: value/type mismatch");
      return potential_of_value(v->v1, *t.a, select_component(p, "1"), basis) +
             potential_of_value(v->v2, *t.b, select_component(p, "2"), basis);
    }
    default:
      return Rat(0);  // non-list types contribute zero potential
  }
}

Rat potential(const Env& env, const TypeContext& ctx, const AnnVec& p, const Basis& basis) {
  Rat total = p.get(Index::constant());
  for (const auto& [name, t] : ctx) {
    auto it = env.find(name);
    if (it == env.end()) throw LangError("potential: '" + name + "' missing from env");
    total += potential_of_value(it->second, t, select_component(p, name), basis);
  }
  return total;
}

}  // namespace lincost
