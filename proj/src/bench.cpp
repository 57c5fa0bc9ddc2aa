#include "lincost/bench.hpp"

#include <fstream>
#include <sstream>

#include "lincost/classic.hpp"
#include "lincost/expand.hpp"
#include "lincost/infer.hpp"
#include "lincost/normalize.hpp"
#include "lincost/parser.hpp"

namespace lincost {

std::string gen_synthetic(int c, int l) {
  if (l <= 0) return "fun f0 x0 = x0";
  std::ostringstream os;
  os << "let g1 = fun f0 x0 = x0 in\n";
  auto chain = [&](int level) {
    // h::(g (g (... (f t)))) with c wrapped calls
    std::string inner = "f" + std::to_string(level) + " t" + std::to_string(level);
    for (int i = 0; i < c; ++i) inner = "g" + std::to_string(level) + " (" + inner + ")";
    return "h" + std::to_string(level) + "::(" + inner + ")";
  };
  for (int i = 2; i <= l; ++i) {
    int lv = i - 1;
    os << "let g" << i << " = fun f" << lv << " x" << lv << " = case x" << lv
       << " of | [] -> [] | h" << lv << "::t" << lv << " -> " << chain(lv) << " in\n";
  }
  os << "fun f" << l << " x" << l << " = case x" << l << " of | [] -> [] | h" << l << "::t"
     << l << " -> " << chain(l) << "\n";
  return os.str();
}

Rat classic_bound(int d, int c, int l) {
  if (c < 1) throw LangError("classic_bound needs c >= 1");
  if (d < 1 || l < 0) throw LangError("classic_bound needs d >= 1, l >= 0");
  Rat pow(1);
  for (int i = 0; i <= l; ++i) pow *= c;
  return Rat(d) * pow * (binom(d + l + 1, d) - 1);
}

std::string bench_csv_header() {
  return "d,c,l,algo,constr_secs,solve_secs,total_secs,constrs,status";
}

namespace {

std::string fmt_secs(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);  // microseconds
  os << s;
  return os.str();
}

}  // namespace

std::string bench_csv_row(const BenchRow& r) {
  std::ostringstream os;
  os << r.d << "," << r.c << "," << r.l << "," << r.algo << "," << fmt_secs(r.constr_secs)
     << "," << fmt_secs(r.solve_secs) << "," << fmt_secs(r.total_secs) << "," << r.constrs
     << "," << r.status;
  return os.str();
}

std::vector<BenchRow> run_grid(const BenchConfig& cfg,
                               const std::function<void(const BenchRow&)>& on_row) {
  using Clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  std::ofstream csv;
  if (!cfg.csv_path.empty()) {
    csv.open(cfg.csv_path);
    csv << bench_csv_header() << "\n";
  }
  auto push = [&](BenchRow row) {
    if (csv.is_open()) csv << bench_csv_row(row) << "\n" << std::flush;
    if (on_row) on_row(row);
    rows.push_back(std::move(row));
  };

  for (int c = cfg.c.lo; c <= cfg.c.hi; ++c) {
    for (int l = cfg.l.lo; l <= cfg.l.hi; ++l) {
      Program prog;
      std::string parse_error;
      try {
        ExprPtr ast = parse_program(gen_synthetic(c, l));
        prog = typecheck_program(expand_higher_order(let_normalize(*ast)));
      } catch (const LangError& err) {
        parse_error = err.what();
      }
      for (int d = cfg.d.lo; d <= cfg.d.hi; ++d) {
        Basis basis = cfg.basis_kind == Basis::Kind::Polynomial ? Basis::poly(d)
                                                                : Basis::exp(d + 1);
        if (cfg.run_new) {
          BenchRow row{d, c, l, "new"};
          if (!parse_error.empty()) {
            row.status = "error";
          } else {
            auto t0 = Clock::now();
            InferOptions opts;
            opts.deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(cfg.timeout_secs));
            auto reports = infer_program(prog, basis, opts);
            row.status = "ok";
            for (const auto& [name, rep] : reports) {
              row.constrs += rep.constraint_count;
              row.constr_secs += rep.gen_secs;
              row.solve_secs += rep.solve_secs;
              if (rep.status == FunStatus::Nonlinear) row.status = "nonlinear";
              if (rep.lp.solve_state == "aborted") row.status = "timeout";
              if (rep.status == FunStatus::Infeasible && row.status == "ok")
                row.status = "infeasible";
            }
            row.total_secs = std::chrono::duration<double>(Clock::now() - t0).count();
          }
          push(std::move(row));
        }
        if (cfg.run_classic) {
          BenchRow row{d, c, l, "classic"};
          if (!parse_error.empty()) {
            row.status = "error";
          } else {
            auto t0 = Clock::now();
            ClassicOptions copts;
            copts.deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(cfg.timeout_secs));
            copts.objective.kind = ClassicObjective::Kind::MaximizeOutput;
            // Unit potential at every input slot.
            {
              const FunDef& top = prog.funs.back();
              for (const auto& i : indices(top.arg, basis))
                copts.objective.pinned_input.set(i, Rat(1));
            }
            ClassicReport rep =
                classic_infer(prog, prog.funs.back().name, basis, ClassicMode::CostFree,
                              copts);
            row.constrs = rep.constraint_count;
            row.constr_secs = rep.gen_secs;
            row.solve_secs = rep.solve_secs;
            row.total_secs = std::chrono::duration<double>(Clock::now() - t0).count();
            switch (rep.status) {
              case ClassicStatus::Solved: row.status = "ok"; break;
              case ClassicStatus::Aborted: row.status = "timeout"; break;
              case ClassicStatus::Infeasible: row.status = "infeasible"; break;
              case ClassicStatus::Unbounded: row.status = "unbounded"; break;
              case ClassicStatus::Error: row.status = "error"; break;
            }
          }
          push(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace lincost
