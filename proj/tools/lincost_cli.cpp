#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lincost/bench.hpp"
#include "lincost/classic.hpp"
#include "lincost/corpus.hpp"
#include "lincost/eval.hpp"
#include "lincost/expand.hpp"
#include "lincost/infer.hpp"
#include "lincost/json_io.hpp"
#include "lincost/normalize.hpp"
#include "lincost/parser.hpp"

using namespace lincost;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Program load_program(const std::string& path) {
  ExprPtr ast = parse_program(read_file(path));
  return typecheck_program(expand_higher_order(let_normalize(*ast)));
}

Basis basis_from(const std::string& kind, int degree, int base) {
  return kind == "exp" ? Basis::exp(base) : Basis::poly(degree);
}

int run_analyze(const std::string& file, const std::string& basis_kind, int degree, int base,
                const std::string& algo, const std::string& format, bool strict,
                bool dump_ast) {
  if (dump_ast) {
    ExprPtr ast = let_normalize(*parse_program(read_file(file)));
    std::cout << expr_to_json(*ast).dump(2) << "\n";
    return 0;
  }
  Program prog = load_program(file);
  Basis basis = basis_from(basis_kind, degree, base);
  json out = json::array();
  bool failed = false;
  if (algo == "new" || algo == "both") {
    auto reports = infer_program(prog, basis);
    for (const auto& f : prog.funs) {
      auto it = reports.find(f.name);
      if (it == reports.end()) continue;
      const FunReport& r = it->second;
      failed |= r.status == FunStatus::Infeasible || r.status == FunStatus::Nonlinear;
      if (format == "json") {
        out.push_back(report_to_json(r));
      } else {
        std::cout << r.name << ": " << status_str(r.status) << " ("
                  << r.constraint_count << " constraints)\n";
        if (r.matrix) std::cout << r.matrix->str();
        for (const auto& d : r.diagnostics) std::cout << "  note: " << d << "\n";
      }
    }
  }
  if (algo == "classic" || algo == "both") {
    for (const auto& f : prog.funs) {
      if (!analyzable(f)) continue;
      ClassicOptions opts;
      opts.objective.kind = ClassicObjective::Kind::MaximizeOutput;
      for (const auto& i : indices(f.arg, basis)) opts.objective.pinned_input.set(i, Rat(1));
      ClassicReport r = classic_infer(prog, f.name, basis, ClassicMode::CostFree, opts);
      failed |= r.status == ClassicStatus::Error;
      if (format == "json") {
        out.push_back(classic_report_to_json(r));
      } else {
        std::cout << r.name << " [classic]: " << classic_report_to_json(r)["status"]
                  << " (" << r.constraint_count << " constraints)\n";
      }
    }
  }
  if (format == "json") std::cout << out.dump(2) << "\n";
  return strict && failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lincost: cost-free resource analysis with linear maps"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "infer or check cost-free matrices");
  std::string a_file, a_basis = "poly", a_algo = "new", a_format = "json";
  int a_degree = 2, a_base = 2;
  bool a_strict = false, a_dump_ast = false;
  analyze->add_option("file", a_file)->required();
  analyze->add_option("--basis", a_basis)->check(CLI::IsMember({"poly", "exp"}));
  analyze->add_option("--degree", a_degree);
  analyze->add_option("--base", a_base);
  analyze->add_option("--algo", a_algo)->check(CLI::IsMember({"new", "classic", "both"}));
  analyze->add_option("--format", a_format)->check(CLI::IsMember({"json", "text"}));
  analyze->add_flag("--strict", a_strict);
  analyze->add_flag("--dump-ast", a_dump_ast, "print the normalized AST as JSON and exit");

  // check
  auto* check = app.add_subcommand("check", "check a concrete matrix for a function");
  std::string c_file, c_fn, c_matrix, c_basis = "poly";
  int c_degree = 2, c_base = 2;
  check->add_option("file", c_file)->required();
  check->add_option("--fn", c_fn)->required();
  check->add_option("--matrix", c_matrix)->required();
  check->add_option("--basis", c_basis)->check(CLI::IsMember({"poly", "exp"}));
  check->add_option("--degree", c_degree);
  check->add_option("--base", c_base);

  // eval
  auto* ev = app.add_subcommand("eval", "apply the program's final function to an input");
  std::string e_file, e_input;
  ev->add_option("file", e_file)->required();
  ev->add_option("--input", e_input)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "synthetic grid benchmark");
  std::string b_grid = "1..2,0..1,0..1", b_out;
  double b_timeout = 120.0;
  bench->add_option("--grid", b_grid, "dLO..dHI,cLO..cHI,lLO..lHI");
  bench->add_option("--timeout", b_timeout, "per-cell budget in seconds");
  bench->add_option("--out", b_out, "CSV output path");

  // export-lp
  auto* exp = app.add_subcommand("export-lp", "write a function's inference LP");
  std::string x_file, x_fn, x_out, x_basis = "poly";
  int x_degree = 2, x_base = 2;
  exp->add_option("file", x_file)->required();
  exp->add_option("--fn", x_fn)->required();
  exp->add_option("--out", x_out)->required();
  exp->add_option("--basis", x_basis)->check(CLI::IsMember({"poly", "exp"}));
  exp->add_option("--degree", x_degree);
  exp->add_option("--base", x_base);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;  // usage errors exit 2
  }

  try {
    if (*analyze)
      return run_analyze(a_file, a_basis, a_degree, a_base, a_algo, a_format, a_strict,
                         a_dump_ast);
    if (*check) {
      Program prog = load_program(c_file);
      PMat m = pmat_from_json(json::parse(read_file(c_matrix)));
      FunReport r = check_function(prog, c_fn, m, basis_from(c_basis, c_degree, c_base));
      std::cout << report_to_json(r).dump(2) << "\n";
      return r.status == FunStatus::Checked ? 0 : 1;
    }
    if (*ev) {
      Program prog = load_program(e_file);
      ValuePtr fn = evaluate({}, *prog.root);
      ValuePtr input = parse_value(e_input);
      ValuePtr result = fn->kind == Value::Kind::Closure ? apply_closure(fn, input) : fn;
      std::cout << value_str(result) << "\n";
      return 0;
    }
    if (*bench) {
      BenchConfig cfg;
      if (sscanf(b_grid.c_str(), "%d..%d,%d..%d,%d..%d", &cfg.d.lo, &cfg.d.hi, &cfg.c.lo,
                 &cfg.c.hi, &cfg.l.lo, &cfg.l.hi) != 6) {
        std::cerr << "bad --grid, expected dLO..dHI,cLO..cHI,lLO..lHI\n";
        return 2;
      }
      cfg.timeout_secs = b_timeout;
      cfg.csv_path = b_out;
      std::cout << bench_csv_header() << "\n";
      run_grid(cfg, [](const BenchRow& r) { std::cout << bench_csv_row(r) << "\n"; });
      return 0;
    }
    if (*exp) {
      Program prog = load_program(x_file);
      Basis basis = basis_from(x_basis, x_degree, x_base);
      // Concrete matrices for the callees first.
      auto reports = infer_program(prog, basis);
      FunMats mats;
      for (const auto& [name, r] : reports)
        if (r.matrix) mats[name] = r.matrix;
      LPProblem lp = inference_lp(prog, x_fn, basis, mats);
      std::ofstream out(x_out);
      out << export_lp(lp);
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
