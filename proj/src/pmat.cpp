#include "lincost/pmat.hpp"

#include <sstream>

namespace lincost {

namespace {
const Scalar kZero{Rat(0)};
const Scalar kOne{Rat(1)};
}  // namespace

const Scalar& PMat::at(const Index& r, const Index& c) const {
  auto it = entries.find({r, c});
  return it == entries.end() ? kZero : it->second;
}

void PMat::set(const Index& r, const Index& c, Scalar v) {
  rows.insert(r);
  cols.insert(c);
  if (v.is_rational() && v.rational() == 0)
    entries.erase({r, c});
  else
    entries[{r, c}] = std::move(v);
}

Scalar PMat::ext(const Index& r, const Index& c) const {
  if (cols.count(c)) {
    if (!rows.count(r)) return kZero;
    return at(r, c);
  }
  return r == c ? kOne : kZero;
}

bool PMat::operator==(const PMat& o) const {
  IndexSet rr = set_union(set_union(rows, o.rows), set_union(cols, o.cols));
  for (const auto& r : rr)
    for (const auto& c : rr)
      if (!(ext(r, c) == o.ext(r, c))) return false;
  return true;
}

std::string PMat::str() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << r.str() << ":";
    for (const auto& c : cols) os << " " << at(r, c).str();
    os << "\n";
  }
  return os.str();
}

namespace {

using SparseCol = std::map<Index, Scalar>;

void add_to(SparseCol& col, const Index& i, const Scalar& v) {
  auto it = col.find(i);
  if (it == col.end()) {
    if (!v.is_zero()) col.emplace(i, v);
  } else {
    Scalar sum = it->second + v;
    if (sum.is_zero())
      col.erase(it);
    else
      it->second = std::move(sum);
  }
}

// v pushed through the extended matrix M (+) I.
SparseCol apply_ext(const PMat& m, const SparseCol& v,
                    const std::map<Index, std::vector<std::pair<Index, const Scalar*>>>& by_col) {
  SparseCol out;
  for (const auto& [k, val] : v) {
    if (m.cols.count(k)) {
      auto it = by_col.find(k);
      if (it == by_col.end()) continue;  // zero column
      for (const auto& [row, entry] : it->second) add_to(out, row, *entry * val);
    } else {
      add_to(out, k, val);
    }
  }
  return out;
}

std::map<Index, std::vector<std::pair<Index, const Scalar*>>> column_index(const PMat& m) {
  std::map<Index, std::vector<std::pair<Index, const Scalar*>>> by_col;
  for (const auto& [rc, v] : m.entries) by_col[rc.second].emplace_back(rc.first, &v);
  return by_col;
}

}  // namespace

PMat compose(const PMat& a, const PMat& b) {
  PMat out;
  out.rows = set_union(a.rows, b.rows);
  out.cols = set_union(a.cols, b.cols);
  auto a_cols = column_index(a);
  auto b_cols = column_index(b);
  for (const auto& j : out.cols) {
    SparseCol unit{{j, kOne}};
    SparseCol mid = apply_ext(b, unit, b_cols);
    SparseCol fin = apply_ext(a, mid, a_cols);
    for (const auto& [i, v] : fin) {
      // Identity passthrough may surface indices outside the support rows;
      // those stay implicit.
      if (out.rows.count(i)) {
        if (!v.is_zero()) out.entries[{i, j}] = v;
      } else if (i == j && v == kOne) {
        // implicit identity, nothing to store
      } else {
        out.rows.insert(i);
        if (!v.is_zero()) out.entries[{i, j}] = v;
      }
    }
  }
  return out;
}

Rat AnnVecH::get(const Index& i) const {
  auto it = entries.find(i);
  if (it == entries.end()) return Rat(0);
  if (!it->second.is_rational()) throw LangError("annotation entry is not rational");
  return it->second.rational();
}

bool AnnVecH::is_havoc(const Index& i) const {
  auto it = entries.find(i);
  return it != entries.end() && it->second.is_havoc();
}

AnnVec AnnVecH::rationals() const {
  AnnVec out;
  for (const auto& [i, v] : entries)
    if (v.is_rational()) out.set(i, v.rational());
  return out;
}

AnnVecH apply(const PMat& a, const AnnVec& p) {
  for (const auto& [rc, v] : a.entries)
    if (v.is_affine()) throw LangError("apply: matrix has symbolic entries");
  SparseCol v;
  for (const auto& [i, q] : p.entries)
    if (q != 0) v.emplace(i, Scalar(q));
  auto a_cols = column_index(a);
  SparseCol out = apply_ext(a, v, a_cols);
  AnnVecH res;
  for (auto& [i, s] : out) res.entries.emplace(i, std::move(s));
  return res;
}

LeqResult leq_constraints(const PMat& a, const PMat& b, const std::optional<IndexSet>& rows,
                          const std::optional<IndexSet>& cols, const std::string& tag) {
  const IndexSet row_set = rows ? *rows : set_union(a.rows, b.rows);
  const IndexSet col_set = cols ? *cols : set_union(a.cols, b.cols);
  LeqResult out;
  for (const auto& r : row_set) {
    for (const auto& c : col_set) {
      Scalar lhs = a.ext(r, c);
      Scalar rhs = b.ext(r, c);
      if (rhs.is_havoc()) continue;  // an arbitrary choice satisfies it
      if (lhs.is_havoc()) {
        out.havoc_left.push_back({r, c, lhs, rhs, tag});
        continue;
      }
      if (lhs == rhs) continue;  // holds trivially
      out.ineqs.push_back({r, c, std::move(lhs), std::move(rhs), tag});
    }
  }
  return out;
}

PMat identity() { return PMat{}; }

PMat move(const std::string& x, const std::string& y, const IndexSet& x_indices) {
  PMat m;
  for (const auto& i : x_indices) {
    Index src = i.with_prefix(x);
    Index dst = i.with_prefix(y);
    m.rows.insert(src);
    m.rows.insert(dst);
    m.cols.insert(src);
    m.entries[{dst, src}] = kOne;
  }
  return m;
}

PMat shift(const std::string& x, const std::string& y, const Basis& basis) {
  PMat m;
  const Index cst = Index::constant();
  auto lvl = [&](const std::string& name, int k) {
    return basis.kind == Basis::Kind::Polynomial ? Index::deg({name}, k)
                                                 : Index::base({name}, k);
  };
  for (int k = basis.lo(); k <= basis.hi(); ++k) {
    m.rows.insert(lvl(x, k));
    m.rows.insert(lvl(y, k));
    m.cols.insert(lvl(x, k));
  }
  m.rows.insert(cst);
  m.cols.insert(cst);
  if (basis.kind == Basis::Kind::Polynomial) {
    // Pascal: y.deg k <- x.deg k + x.deg (k+1); c <- c + x.deg 1.
    for (int k = 1; k <= basis.max; ++k) {
      m.entries[{lvl(y, k), lvl(x, k)}] = kOne;
      if (k + 1 <= basis.max) m.entries[{lvl(y, k), lvl(x, k + 1)}] = kOne;
    }
    m.entries[{cst, lvl(x, 1)}] = kOne;
  } else {
    // Stirling: y.base b <- b * x.base b + x.base (b+1); c <- c + x.base 2.
    for (int b = 2; b <= basis.max; ++b) {
      m.entries[{lvl(y, b), lvl(x, b)}] = Scalar(Rat(b));
      if (b + 1 <= basis.max) m.entries[{lvl(y, b), lvl(x, b + 1)}] = kOne;
    }
    m.entries[{cst, lvl(x, 2)}] = kOne;
  }
  m.entries[{cst, cst}] = kOne;
  return m;
}

PMat unshift(const std::string& x, const std::string& y, const Basis& basis) {
  // Closed-form block inverse of shift(y, x): lower bidiagonal blocks invert
  // level by level.
  PMat m;
  const Index cst = Index::constant();
  auto lvl = [&](const std::string& name, int k) {
    return basis.kind == Basis::Kind::Polynomial ? Index::deg({name}, k)
                                                 : Index::base({name}, k);
  };
  int lo = basis.lo(), hi = basis.hi();
  for (int k = lo; k <= hi; ++k) {
    m.rows.insert(lvl(x, k));
    m.rows.insert(lvl(y, k));
    m.cols.insert(lvl(x, k));
  }
  m.rows.insert(cst);
  m.cols.insert(cst);

  // The shift block S (rows/cols ordered hi..lo, then c) is lower triangular
  // with diag (and subdiagonal) entries; invert by forward substitution on
  // each unit column.
  int n = hi - lo + 2;  // levels plus the constant slot
  auto diag = [&](int i) {
    if (i == n - 1) return Rat(1);  // constant row
    int level = hi - i;
    return basis.kind == Basis::Kind::Polynomial ? Rat(1) : Rat(level);
  };
  // Column j of the inverse solves S * v = e_j; the subdiagonal of S is
  // all ones (each level row takes the next-higher level, the constant row
  // takes the lowest level).
  for (int j = 0; j < n; ++j) {
    std::vector<Rat> v(n, Rat(0));
    for (int i = 0; i < n; ++i) {
      Rat rhs = (i == j) ? Rat(1) : Rat(0);
      if (i > 0) rhs -= v[i - 1];
      v[i] = rhs / diag(i);
    }
    Index col_idx = (j == n - 1) ? cst : lvl(x, hi - j);
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      Index row_idx = (i == n - 1) ? cst : lvl(y, hi - i);
      m.entries[{row_idx, col_idx}] = Scalar(v[i]);
    }
  }
  return m;
}

PMat nil_map(const std::string& x, const IndexSet& x_indices, const IndexSet& ambient) {
  PMat m;
  IndexSet x_rows;
  for (const auto& i : x_indices) x_rows.insert(i.with_prefix(x));
  m.rows = set_union(x_rows, ambient);
  m.cols = m.rows;
  for (const auto& r : x_rows)
    for (const auto& c : m.cols) m.entries[{r, c}] = Scalar::havoc();
  for (const auto& i : ambient)
    if (!x_rows.count(i)) m.entries[{i, i}] = kOne;
  return m;
}

PMat zero_map(const IndexSet& idxs) {
  PMat m;
  m.rows = idxs;
  m.cols = idxs;
  return m;
}

PMat proj(const IndexSet& keep, const IndexSet& ambient) {
  IndexSet away;
  for (const auto& i : ambient)
    if (!keep.count(i)) away.insert(i);
  return zero_map(away);
}

}  // namespace lincost
