#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lincost/basis.hpp"
#include "lincost/rational.hpp"

namespace lincost {

// Synthetic pattern: l nested linearly recursive list functions, each
// calling its predecessor c times in the cons branch; l = 0 is the
// non-recursive identity. Every generated program is the list identity.
std::string gen_synthetic(int c, int l);

// Closed-form overapproximation of the classic algorithm's worst-case
// constraint count: d * c^(l+1) * (binom(d+l+1, d) - 1). Requires c >= 1.
Rat classic_bound(int d, int c, int l);

struct GridRange {
  int lo = 1, hi = 1;
};

struct BenchConfig {
  GridRange d{1, 1}, c{0, 0}, l{0, 0};  // inclusive ranges
  Basis::Kind basis_kind = Basis::Kind::Polynomial;
  bool run_new = true;
  bool run_classic = true;
  double timeout_secs = 120.0;
  std::string csv_path;  // empty: no file output
};

struct BenchRow {
  int d = 0, c = 0, l = 0;
  std::string algo;      // "new" | "classic"
  double constr_secs = 0, solve_secs = 0, total_secs = 0;
  long constrs = 0;
  std::string status;    // ok | timeout | infeasible | nonlinear | error
};

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& r);

// Runs the selected algorithms over the grid with per-cell timeouts;
// timeout rows are flagged and the run continues.
std::vector<BenchRow> run_grid(const BenchConfig& cfg,
                               const std::function<void(const BenchRow&)>& on_row = {});

}  // namespace lincost
