#include "lincost/lp.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace lincost {

void LinExpr::add_term(VarId v, const Rat& coeff) {
  if (coeff == 0) return;
  Rat& slot = terms[v];
  slot += coeff;
  if (slot == 0) terms.erase(v);
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  constant += o.constant;
  for (const auto& [v, c] : o.terms) add_term(v, c);
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  constant -= o.constant;
  for (const auto& [v, c] : o.terms) add_term(v, -c);
  return *this;
}

LinExpr& LinExpr::operator*=(const Rat& k) {
  if (k == 0) {
    terms.clear();
    constant = 0;
    return *this;
  }
  constant *= k;
  for (auto& [v, c] : terms) c *= k;
  return *this;
}

std::string LinExpr::str(const std::vector<std::string>& names) const {
  std::string out;
  for (const auto& [v, c] : terms) {
    if (!out.empty()) out += " + ";
    out += rat_str(c) + "*" + (v < static_cast<VarId>(names.size()) ? names[v]
                                                                    : "v" + std::to_string(v));
  }
  if (constant != 0 || out.empty()) {
    if (!out.empty()) out += " + ";
    out += rat_str(constant);
  }
  return out;
}

VarId LPProblem::add_var(const std::string& name, bool free_var) {
  var_names.push_back(name);
  var_free.push_back(free_var);
  return static_cast<VarId>(var_names.size()) - 1;
}

void LPProblem::add_constraint(LinExpr lhs, Cmp cmp, LinExpr rhs) {
  constraints.push_back({std::move(lhs), cmp, std::move(rhs)});
}

namespace {

using Clock = std::chrono::steady_clock;

bool past_deadline(const SolveOptions& opts) {
  return opts.deadline && Clock::now() > *opts.deadline;
}

// Normalized row: terms {cmp} rhs_const, variables on the left only.
struct Row {
  std::map<VarId, Rat> terms;
  Cmp cmp;
  Rat rhs;
};

Row normalize(const Constraint& c) {
  LinExpr l = c.lhs;
  l -= c.rhs;
  Row r;
  r.terms = l.terms;
  r.cmp = c.cmp;
  r.rhs = -l.constant;
  return r;
}

// --- presolve: eliminate equalities by substitution ------------------------

struct Presolved {
  std::vector<Row> rows;
  LinExpr objective;
  // Eliminated variables in elimination order: var = expr over survivors
  // and later-eliminated vars.
  std::vector<std::pair<VarId, LinExpr>> eliminated;
  bool infeasible = false;
};

void substitute(std::map<VarId, Rat>& terms, Rat& rhs, VarId v, const LinExpr& repl) {
  auto it = terms.find(v);
  if (it == terms.end()) return;
  Rat coeff = it->second;
  terms.erase(it);
  rhs -= coeff * repl.constant;
  for (const auto& [u, c] : repl.terms) {
    Rat& slot = terms[u];
    slot += coeff * c;
    if (slot == 0) terms.erase(u);
  }
}

Presolved presolve(const LPProblem& p, const SolveOptions& opts) {
  Presolved out;
  out.objective = p.objective;
  out.rows.reserve(p.constraints.size());
  for (const auto& c : p.constraints) out.rows.push_back(normalize(c));

  // Occurrence lists: variable -> row indices that mention it.
  std::map<VarId, std::vector<size_t>> occ;
  for (size_t i = 0; i < out.rows.size(); ++i)
    for (const auto& [v, c] : out.rows[i].terms) occ[v].push_back(i);

  std::vector<bool> dead(out.rows.size(), false);
  std::vector<bool> gone(p.num_vars(), false);

  for (size_t i = 0; i < out.rows.size(); ++i) {
    if (dead[i]) continue;
    Row& row = out.rows[i];
    if (row.cmp != Cmp::Eq) continue;
    if (row.terms.empty()) {
      if (row.rhs != 0) {
        out.infeasible = true;
        return out;
      }
      dead[i] = true;
      continue;
    }
    // Pick a unit-coefficient variable to eliminate.
    VarId pivot = -1;
    for (const auto& [v, c] : row.terms) {
      if (c == 1 || c == -1) {
        pivot = v;
        break;
      }
    }
    if (pivot < 0) continue;
    Rat pc = row.terms[pivot];
    LinExpr repl;  // pivot = repl
    repl.constant = row.rhs / pc;
    for (const auto& [v, c] : row.terms)
      if (v != pivot) repl.add_term(v, -c / pc);
    dead[i] = true;
    gone[pivot] = true;
    out.eliminated.emplace_back(pivot, repl);
    auto& mentions = occ[pivot];
    for (size_t j : mentions) {
      if (j == i || dead[j]) continue;
      Row& r2 = out.rows[j];
      substitute(r2.terms, r2.rhs, pivot, repl);
      for (const auto& [u, c] : repl.terms) occ[u].push_back(j);
    }
    mentions.clear();
    // Objective sees the substitution too.
    {
      Rat negc = -out.objective.constant;
      substitute(out.objective.terms, negc, pivot, repl);
      out.objective.constant = -negc;
    }
    // Reattach the bound of a non-free eliminated variable: repl >= 0,
    // unless that is implied by nonnegativity of the survivors.
    if (!p.var_free[pivot]) {
      bool implied = repl.constant >= 0;
      if (implied)
        for (const auto& [u, c] : repl.terms)
          if (c < 0 || p.var_free[u]) {
            implied = false;
            break;
          }
      if (!implied) {
        Row guard;
        for (const auto& [u, c] : repl.terms) guard.terms[u] = c;
        guard.cmp = Cmp::Ge;
        guard.rhs = -repl.constant;
        occ[pivot];  // keep map stable
        size_t idx = out.rows.size();
        out.rows.push_back(std::move(guard));
        dead.push_back(false);
        for (const auto& [u, c] : out.rows[idx].terms) occ[u].push_back(idx);
      }
    }
    if ((i & 255) == 0 && past_deadline(opts)) break;  // give up on presolve, keep partial
  }

  std::vector<Row> kept;
  kept.reserve(out.rows.size());
  for (size_t i = 0; i < out.rows.size(); ++i) {
    if (dead[i]) continue;
    Row& row = out.rows[i];
    // Drop trivially satisfied constant rows; flag contradictions.
    if (row.terms.empty()) {
      bool ok = (row.cmp == Cmp::Le && 0 <= row.rhs) || (row.cmp == Cmp::Ge && 0 >= row.rhs) ||
                (row.cmp == Cmp::Eq && row.rhs == 0);
      if (!ok) {
        out.infeasible = true;
        return out;
      }
      continue;
    }
    kept.push_back(std::move(row));
  }
  out.rows = std::move(kept);
  return out;
}

// --- dense two-phase simplex ------------------------------------------------

struct Tableau {
  size_t m = 0, n = 0;               // rows, structural+slack+artificial columns
  std::vector<std::vector<Rat>> t;   // m rows of n+1 (rhs last)
  std::vector<int> basis;            // basic column per row
  std::vector<bool> artificial;      // per column

  Rat& rhs(size_t i) { return t[i][n]; }
};

// Reduced-cost vector for objective coefficients c over the current basis.
std::vector<Rat> reduced_costs(const Tableau& tb, const std::vector<Rat>& c, Rat& obj) {
  std::vector<Rat> red = c;
  obj = 0;
  for (size_t i = 0; i < tb.m; ++i) {
    const Rat& cb = c[static_cast<size_t>(tb.basis[i])];
    if (cb == 0) continue;
    obj += cb * tb.t[i][tb.n];
    for (size_t j = 0; j < tb.n; ++j)
      if (tb.t[i][j] != 0) red[j] -= cb * tb.t[i][j];
  }
  return red;
}

void pivot(Tableau& tb, size_t r, size_t c, std::vector<Rat>& red, Rat& obj) {
  std::vector<Rat>& prow = tb.t[r];
  Rat inv = 1 / prow[c];
  if (inv != 1)
    for (auto& x : prow)
      if (x != 0) x *= inv;
  prow[c] = 1;
  for (size_t i = 0; i < tb.m; ++i) {
    if (i == r) continue;
    Rat f = tb.t[i][c];
    if (f == 0) continue;
    std::vector<Rat>& row = tb.t[i];
    for (size_t j = 0; j <= tb.n; ++j)
      if (prow[j] != 0) row[j] -= f * prow[j];
    row[c] = 0;
  }
  {
    Rat f = red[c];
    if (f != 0) {
      for (size_t j = 0; j < tb.n; ++j)
        if (prow[j] != 0) red[j] -= f * prow[j];
      red[c] = 0;
      obj += f * prow[tb.n];
    }
  }
  tb.basis[r] = static_cast<int>(c);
}

enum class PhaseResult { Optimal, Unbounded, Aborted };

// Entering rule: Dantzig (largest reduced cost) while the objective makes
// progress, switching to Bland's lowest-index rule during degenerate
// streaks so termination stays guaranteed. Leaving: min ratio with lowest
// basic index tie-break.
PhaseResult run_simplex(Tableau& tb, std::vector<Rat>& red, Rat& obj,
                        const std::vector<bool>& allowed, const SolveOptions& opts,
                        long& pivots) {
  int stalled = 0;
  bool bland = false;
  while (true) {
    if (past_deadline(opts)) return PhaseResult::Aborted;
    size_t enter = tb.n;
    if (bland) {
      for (size_t j = 0; j < tb.n; ++j) {
        if (allowed[j] && red[j] > 0) {
          enter = j;
          break;
        }
      }
    } else {
      for (size_t j = 0; j < tb.n; ++j)
        if (allowed[j] && red[j] > 0 && (enter == tb.n || red[j] > red[enter])) enter = j;
    }
    if (enter == tb.n) return PhaseResult::Optimal;
    size_t leave = tb.m;
    Rat best_ratio;
    for (size_t i = 0; i < tb.m; ++i) {
      const Rat& a = tb.t[i][enter];
      if (a <= 0) continue;
      Rat ratio = tb.t[i][tb.n] / a;
      if (leave == tb.m || ratio < best_ratio ||
          (ratio == best_ratio && tb.basis[i] < tb.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == tb.m) return PhaseResult::Unbounded;
    pivot(tb, leave, enter, red, obj);
    ++pivots;
    if (best_ratio == 0) {
      if (!bland && ++stalled >= 32) bland = true;
    } else {
      stalled = 0;
      bland = false;
    }
  }
}

}  // namespace

Solution solve(const LPProblem& p, const SolveOptions& opts) {
  Solution sol;
  Presolved pre = presolve(p, opts);
  if (pre.infeasible) {
    sol.status = Solution::Status::Infeasible;
    return sol;
  }
  if (past_deadline(opts)) {
    sol.status = Solution::Status::Aborted;
    return sol;
  }

  std::vector<bool> eliminated(p.num_vars(), false);
  for (const auto& [v, repl] : pre.eliminated) eliminated[v] = true;

  // Bound extraction: single-variable rows become variable bounds. A
  // variable with a finite lower bound is shifted (x = lo + z), one with
  // only an upper bound is flipped (x = hi - z), so almost every column is
  // a plain z >= 0 and rarely needs the +/- split or an artificial.
  std::vector<std::optional<Rat>> lo(p.num_vars()), hi(p.num_vars());
  for (VarId v = 0; v < static_cast<VarId>(p.num_vars()); ++v)
    if (!p.var_free[v] && !eliminated[v]) lo[v] = Rat(0);
  {
    std::vector<Row> kept;
    kept.reserve(pre.rows.size());
    for (Row& r : pre.rows) {
      if (r.terms.size() != 1 || r.cmp == Cmp::Eq) {
        kept.push_back(std::move(r));
        continue;
      }
      VarId v = r.terms.begin()->first;
      Rat a = r.terms.begin()->second;
      Rat bound = r.rhs / a;
      bool upper = (r.cmp == Cmp::Le) == (a > 0);
      if (upper) {
        if (!hi[v] || bound < *hi[v]) hi[v] = bound;
      } else {
        if (!lo[v] || bound > *lo[v]) lo[v] = bound;
      }
    }
    pre.rows = std::move(kept);
  }
  for (VarId v = 0; v < static_cast<VarId>(p.num_vars()); ++v) {
    if (lo[v] && hi[v] && *lo[v] > *hi[v]) {
      sol.status = Solution::Status::Infeasible;
      return sol;
    }
  }

  // Transform kinds: 0 shift by lo, 1 flip around hi, 2 free split.
  std::vector<int> kind(p.num_vars(), 2);
  std::vector<Rat> base(p.num_vars(), Rat(0));
  for (VarId v = 0; v < static_cast<VarId>(p.num_vars()); ++v) {
    if (eliminated[v]) continue;
    if (lo[v]) {
      kind[v] = 0;
      base[v] = *lo[v];
    } else if (hi[v]) {
      kind[v] = 1;
      base[v] = *hi[v];
    }
  }
  // Rewrite rows and objective over the transformed variables.
  auto transform = [&](std::map<VarId, Rat>& terms, Rat& constant) {
    for (auto& [v, c] : terms) {
      if (kind[v] == 0) {
        constant += c * base[v];
      } else if (kind[v] == 1) {
        constant += c * base[v];
        c = -c;
      }
    }
  };
  for (Row& r : pre.rows) {
    Rat shift(0);
    transform(r.terms, shift);
    r.rhs -= shift;
  }
  transform(pre.objective.terms, pre.objective.constant);
  // Residual second bounds, already in the transformed space: z <= hi - lo.
  for (VarId v = 0; v < static_cast<VarId>(p.num_vars()); ++v) {
    if (eliminated[v] || !lo[v] || !hi[v]) continue;
    Row r;
    r.terms[v] = 1;
    r.cmp = Cmp::Le;
    r.rhs = *hi[v] - *lo[v];
    pre.rows.push_back(std::move(r));
  }

  // Column mapping: transformed vars get one column, free vars a +/- pair.
  std::vector<int> col_of(p.num_vars(), -1), neg_col_of(p.num_vars(), -1);
  size_t ncols = 0;
  for (VarId v = 0; v < static_cast<VarId>(p.num_vars()); ++v) {
    if (eliminated[v]) continue;
    col_of[v] = static_cast<int>(ncols++);
    if (kind[v] == 2) neg_col_of[v] = static_cast<int>(ncols++);
  }

  size_t m = pre.rows.size();
  size_t slacks = 0;
  for (const auto& r : pre.rows)
    if (r.cmp != Cmp::Eq) ++slacks;

  if (const char* dbg = std::getenv("LINCOST_LP_DEBUG"); dbg && *dbg)
    std::fprintf(stderr, "[lp] rows=%zu cols=%zu slacks=%zu\n", m, ncols, slacks);

  // A tableau too large to allocate is not worth building; time limits are
  // enforced by the per-pivot deadline check instead.
  if (opts.deadline) {
    double cells = static_cast<double>(m) * static_cast<double>(ncols + slacks + m + 1);
    if (cells * 48.0 > 1.2e9) {
      sol.status = Solution::Status::Aborted;
      return sol;
    }
  }

  Tableau tb;
  tb.m = m;
  tb.n = ncols + slacks + m;  // one artificial per row, unused ones stay zero
  tb.t.assign(m, std::vector<Rat>(tb.n + 1, Rat(0)));
  tb.basis.assign(m, -1);
  tb.artificial.assign(tb.n, false);
  for (size_t j = ncols + slacks; j < tb.n; ++j) tb.artificial[j] = true;

  size_t slack_at = ncols;
  std::vector<bool> need_artificial(m, false);
  for (size_t i = 0; i < m; ++i) {
    Row& r = pre.rows[i];
    // Make rhs nonnegative; a >= row with zero rhs flips to <= so its slack
    // can seed the basis without an artificial.
    int sign = (r.rhs < 0 || (r.rhs == 0 && r.cmp == Cmp::Ge)) ? -1 : 1;
    for (const auto& [v, c] : r.terms) {
      Rat val = sign * c;
      tb.t[i][static_cast<size_t>(col_of[v])] += val;
      if (neg_col_of[v] >= 0) tb.t[i][static_cast<size_t>(neg_col_of[v])] -= val;
    }
    tb.rhs(i) = sign * r.rhs;
    Cmp cmp = r.cmp;
    if (sign < 0) cmp = (cmp == Cmp::Le ? Cmp::Ge : cmp == Cmp::Ge ? Cmp::Le : Cmp::Eq);
    if (cmp == Cmp::Le) {
      tb.t[i][slack_at] = 1;
      tb.basis[i] = static_cast<int>(slack_at++);
    } else if (cmp == Cmp::Ge) {
      tb.t[i][slack_at++] = -1;
      need_artificial[i] = true;
    } else {
      need_artificial[i] = true;
    }
    if (need_artificial[i]) {
      size_t aj = ncols + slacks + i;
      tb.t[i][aj] = 1;
      tb.basis[i] = static_cast<int>(aj);
    }
  }

  std::vector<bool> allowed(tb.n, true);

  // Phase 1: drive artificials to zero.
  bool any_artificial = false;
  for (size_t i = 0; i < m; ++i) any_artificial |= need_artificial[i];
  if (any_artificial) {
    std::vector<Rat> c1(tb.n, Rat(0));
    for (size_t j = 0; j < tb.n; ++j)
      if (tb.artificial[j]) c1[j] = -1;
    Rat obj1;
    std::vector<Rat> red = reduced_costs(tb, c1, obj1);
    PhaseResult r = run_simplex(tb, red, obj1, allowed, opts, sol.pivots);
    if (r == PhaseResult::Aborted) {
      sol.status = Solution::Status::Aborted;
      return sol;
    }
    if (obj1 < 0) {
      sol.status = Solution::Status::Infeasible;
      return sol;
    }
    // Pivot remaining artificials out of the basis where possible.
    for (size_t i = 0; i < m; ++i) {
      if (!tb.artificial[static_cast<size_t>(tb.basis[i])]) continue;
      size_t enter = tb.n;
      for (size_t j = 0; j < ncols + slacks; ++j)
        if (tb.t[i][j] != 0) {
          enter = j;
          break;
        }
      if (enter != tb.n) {
        Rat dummy_obj;
        std::vector<Rat> dummy(tb.n, Rat(0));
        pivot(tb, i, enter, dummy, dummy_obj);
      }
      // A fully zero row is redundant; its artificial stays basic at zero.
    }
  }
  for (size_t j = 0; j < tb.n; ++j)
    if (tb.artificial[j]) allowed[j] = false;

  // Phase 2: the substituted objective.
  std::vector<Rat> c2(tb.n, Rat(0));
  for (const auto& [v, coeff] : pre.objective.terms) {
    if (col_of[v] < 0) continue;  // eliminated; folded below via assignment
    c2[static_cast<size_t>(col_of[v])] += coeff;
    if (neg_col_of[v] >= 0) c2[static_cast<size_t>(neg_col_of[v])] -= coeff;
  }
  Rat obj2;
  std::vector<Rat> red = reduced_costs(tb, c2, obj2);
  PhaseResult r = run_simplex(tb, red, obj2, allowed, opts, sol.pivots);
  if (r == PhaseResult::Aborted) {
    sol.status = Solution::Status::Aborted;
    return sol;
  }
  if (r == PhaseResult::Unbounded) {
    sol.status = Solution::Status::Unbounded;
    return sol;
  }

  // Extract, invert the bound transforms, then back-substitute eliminated
  // variables in reverse order.
  std::vector<Rat> colval(tb.n, Rat(0));
  for (size_t i = 0; i < m; ++i) colval[static_cast<size_t>(tb.basis[i])] = tb.rhs(i);
  for (VarId v = 0; v < static_cast<VarId>(p.num_vars()); ++v) {
    if (eliminated[v]) continue;
    Rat z = colval[static_cast<size_t>(col_of[v])];
    if (neg_col_of[v] >= 0) z -= colval[static_cast<size_t>(neg_col_of[v])];
    sol.assignment[v] = kind[v] == 0 ? base[v] + z : kind[v] == 1 ? base[v] - z : z;
  }
  for (auto it = pre.eliminated.rbegin(); it != pre.eliminated.rend(); ++it) {
    Rat x = it->second.constant;
    for (const auto& [u, c] : it->second.terms) x += c * sol.assignment.at(u);
    sol.assignment[it->first] = x;
  }
  sol.objective_value = p.objective.constant;
  for (const auto& [v, coeff] : p.objective.terms)
    sol.objective_value += coeff * sol.assignment.at(v);
  sol.status = Solution::Status::Optimal;
  return sol;
}

bool check_solution(const LPProblem& p, const std::map<VarId, Rat>& assignment,
                    std::string* first_violation) {
  auto value = [&](const LinExpr& e) {
    Rat v = e.constant;
    for (const auto& [var, c] : e.terms) {
      auto it = assignment.find(var);
      if (it != assignment.end()) v += c * it->second;
    }
    return v;
  };
  for (VarId v = 0; v < static_cast<VarId>(p.num_vars()); ++v) {
    if (p.var_free[v]) continue;
    auto it = assignment.find(v);
    Rat x = it == assignment.end() ? Rat(0) : it->second;
    if (x < 0) {
      if (first_violation) *first_violation = p.var_names[v] + " < 0";
      return false;
    }
  }
  for (size_t i = 0; i < p.constraints.size(); ++i) {
    const Constraint& c = p.constraints[i];
    Rat l = value(c.lhs), r = value(c.rhs);
    bool ok = c.cmp == Cmp::Le ? l <= r : c.cmp == Cmp::Ge ? l >= r : l == r;
    if (!ok) {
      if (first_violation)
        *first_violation = "constraint " + std::to_string(i) + ": " + rat_str(l) +
                           (c.cmp == Cmp::Le ? " <= " : c.cmp == Cmp::Ge ? " >= " : " == ") +
                           rat_str(r);
      return false;
    }
  }
  return true;
}

namespace {

// True when q has a terminating decimal expansion; fills the rendering.
bool decimal_str(const Rat& q, std::string& out) {
  mpz_class den = q.get_den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return false;
  int k = std::max(twos, fives);
  mpz_class scaled = q.get_num();
  for (int i = 0; i < k; ++i) scaled *= 10;
  scaled /= q.get_den();
  bool neg = scaled < 0;
  mpz_class abs_scaled = abs(scaled);
  std::string digits = abs_scaled.get_str();
  if (k == 0) {
    out = (neg ? "-" : "") + digits;
    return true;
  }
  while (digits.size() <= static_cast<size_t>(k)) digits.insert(digits.begin(), '0');
  digits.insert(digits.size() - static_cast<size_t>(k), ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  out = (neg ? "-" : "") + digits;
  return true;
}

std::string sanitize(const std::string& name, std::set<std::string>& used) {
  std::string s;
  for (char c : name)
    s += (isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (s.empty() || isdigit(static_cast<unsigned char>(s[0]))) s = "v" + s;
  std::string candidate = s;
  int n = 2;
  while (!used.insert(candidate).second) candidate = s + "_" + std::to_string(n++);
  return candidate;
}

void emit_linear(std::ostringstream& os, const std::map<VarId, Rat>& terms,
                 const std::vector<std::string>& names) {
  bool first = true;
  for (const auto& [v, c] : terms) {
    std::string mag;
    Rat a = c < 0 ? Rat(-c) : c;
    decimal_str(a, mag);  // callers pre-scale rows that do not terminate
    if (first) {
      if (c < 0) os << "- ";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1) os << mag << " ";
    os << names[v];
  }
  if (first) os << "0";
}

bool row_terminates(const std::map<VarId, Rat>& terms, const Rat& rhs) {
  std::string tmp;
  if (!decimal_str(rhs, tmp)) return false;
  for (const auto& [v, c] : terms)
    if (!decimal_str(c, tmp)) return false;
  return true;
}

mpz_class lcm_denoms(const std::map<VarId, Rat>& terms, const Rat& rhs) {
  mpz_class l = rhs.get_den();
  for (const auto& [v, c] : terms) {
    mpz_class d = c.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  return l;
}

}  // namespace

std::string export_lp(const LPProblem& p) {
  std::set<std::string> used;
  std::vector<std::string> names;
  names.reserve(p.num_vars());
  for (const auto& n : p.var_names) names.push_back(sanitize(n, used));

  std::ostringstream os;
  os << "Maximize\n obj: ";
  {
    // Objective constants are dropped (the format has no place for them).
    std::map<VarId, Rat> terms = p.objective.terms;
    if (!row_terminates(terms, Rat(0))) {
      // Scaling the objective preserves the argmax.
      mpz_class l = lcm_denoms(terms, Rat(0));
      for (auto& [v, c] : terms) c *= Rat(l);
    }
    emit_linear(os, terms, names);
  }
  os << "\nSubject To\n";
  for (size_t i = 0; i < p.constraints.size(); ++i) {
    Row r = normalize(p.constraints[i]);
    if (!row_terminates(r.terms, r.rhs)) {
      mpz_class l = lcm_denoms(r.terms, r.rhs);
      for (auto& [v, c] : r.terms) c *= Rat(l);
      r.rhs *= Rat(l);
    }
    os << " c" << i << ": ";
    emit_linear(os, r.terms, names);
    os << (r.cmp == Cmp::Le ? " <= " : r.cmp == Cmp::Ge ? " >= " : " = ");
    std::string rhs;
    decimal_str(r.rhs, rhs);
    os << rhs << "\n";
  }
  os << "Bounds\n";
  for (VarId v = 0; v < static_cast<VarId>(p.num_vars()); ++v)
    if (p.var_free[v]) os << " " << names[v] << " free\n";
  os << "End\n";
  return os.str();
}

}  // namespace lincost
