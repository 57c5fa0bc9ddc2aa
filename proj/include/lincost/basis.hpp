#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lincost/ast.hpp"
#include "lincost/types.hpp"

namespace lincost {

// Potential basis: binomial coefficients up to degree d_max, or Stirling
// numbers of the second kind for bases 2..b_max.
struct Basis {
  enum class Kind { Polynomial, Exponential };
  Kind kind = Kind::Polynomial;
  int max = 1;  // d_max >= 1, or b_max >= 2

  static Basis poly(int d_max);
  static Basis exp(int b_max);

  // Levels of a list's index set: 1..d_max or 2..b_max.
  int lo() const { return kind == Kind::Polynomial ? 1 : 2; }
  int hi() const { return max; }

  bool operator==(const Basis& o) const = default;
};

// An annotation slot. The path names the variable and any pair components
// ("1"/"2"); the reserved names "a" and "r" address a function's argument
// and return. The constant slot has an empty path.
struct Index {
  enum class Leaf { Const, Deg, Base };

  std::vector<std::string> path;
  Leaf leaf = Leaf::Const;
  int level = 0;

  static Index constant() { return Index{}; }
  static Index deg(std::vector<std::string> path, int k) {
    return Index{std::move(path), Leaf::Deg, k};
  }
  static Index base(std::vector<std::string> path, int b) {
    return Index{std::move(path), Leaf::Base, b};
  }

  bool is_const() const { return leaf == Leaf::Const; }
  const std::string& root() const { return path.front(); }

  Index with_prefix(const std::string& seg) const {
    Index i = *this;
    i.path.insert(i.path.begin(), seg);
    return i;
  }
  // Replaces the root segment; only meaningful for non-const indices.
  Index with_root(const std::string& seg) const {
    Index i = *this;
    i.path.front() = seg;
    return i;
  }

  // "c", "x.deg2", "a.base3", "p.1.deg1"
  std::string str() const;

  auto operator<=>(const Index&) const = default;
};

using IndexSet = std::set<Index>;

// Parses the string form produced by Index::str.
Index index_parse(const std::string& s);

// Fig.-3 style index set of a type: lists get one slot per degree/base,
// pairs prefix their components with "1"/"2", everything else is empty.
// Inner lists of nested list types carry no indices (shallow potential).
IndexSet indices(const CfType& t, const Basis& basis);

// Per-variable index sets prefixed by the variable name, plus the constant.
IndexSet context_indices(const TypeContext& ctx, const Basis& basis);

IndexSet prefixed(const std::string& name, const IndexSet& s);
IndexSet set_union(const IndexSet& a, const IndexSet& b);

// Exact binomial coefficient; zero outside 0 <= k <= n.
Rat binom(long n, long k);
// Stirling number of the second kind; zero outside support except S(0,0)=1.
Rat stirling2(long n, long k);

// Annotation vector: finite map from indices to exact rationals, missing
// entries are zero.
struct AnnVec {
  std::map<Index, Rat> entries;

  Rat get(const Index& i) const {
    auto it = entries.find(i);
    return it == entries.end() ? Rat(0) : it->second;
  }
  void set(const Index& i, Rat v) {
    if (v == 0) entries.erase(i);
    else entries[i] = std::move(v);
  }
};

// Fig.-4 potential of a single value at a type under annotation slots given
// by `slot` (paths relative to the value itself, no variable prefix).
Rat potential_of_value(const ValuePtr& v, const CfType& t, const AnnVec& p,
                       const Basis& basis);

// Potential of an environment against a context: p_c plus the per-variable
// contributions, pair components handled componentwise.
Rat potential(const Env& env, const TypeContext& ctx, const AnnVec& p,
              const Basis& basis);

}  // namespace lincost
