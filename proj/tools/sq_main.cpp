#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sq/parse.hpp"
#include "sq/print.hpp"
#include "sq/script.hpp"
#include "sq/sums.hpp"
#include "sq/wick.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sq::Error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct StyleOpts {
  bool ascii = false;
  bool unicode = false;
  bool latex = false;

  sq::PrintStyle pick(sq::PrintStyle fallback = sq::PrintStyle::Unicode) const {
    if (ascii) return sq::PrintStyle::Ascii;
    if (latex) return sq::PrintStyle::Latex;
    if (unicode) return sq::PrintStyle::Unicode;
    return fallback;
  }
};

void add_style_flags(CLI::App* cmd, StyleOpts& opts) {
  auto* a = cmd->add_flag("--ascii", opts.ascii, "print in the parseable ascii form");
  auto* u = cmd->add_flag("--unicode", opts.unicode, "print with daggers and arrows");
  auto* l = cmd->add_flag("--latex", opts.latex, "print as LaTeX math");
  a->excludes(u)->excludes(l);
  u->excludes(l);
}

sq::Context load_context(const std::string& ctx_path, bool fermi_level_occupied) {
  sq::ModelScript ms = sq::parse_script(slurp(ctx_path));
  return sq::build_context(ms, fermi_level_occupied);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic second-quantization toolkit"};
  app.require_subcommand(1);

  bool fermi_level_occupied = false;
  app.add_flag("--fermi-level-occupied", fermi_level_occupied,
               "treat momentum 0 as occupied in the Fermi sea");

  // run
  std::string script_path, outdir = ".";
  auto* run = app.add_subcommand("run", "run a model script");
  run->add_option("script", script_path, "model script file")->required();
  run->add_option("--out", outdir, "output directory");

  // expression subcommands
  std::string ctx_path;
  std::string expr1, expr2;
  StyleOpts style;

  auto* canon = app.add_subcommand("canon", "canonicalize an expression");
  canon->add_option("expr", expr1, "expression")->required();
  canon->add_option("--ctx", ctx_path, "declarations file")->required();
  add_style_flags(canon, style);

  auto* vevc = app.add_subcommand("vev", "vacuum expectation value");
  vevc->add_option("expr", expr1, "expression")->required();
  vevc->add_option("--ctx", ctx_path, "declarations file")->required();
  add_style_flags(vevc, style);

  auto* comm = app.add_subcommand("comm", "commutator of two expressions");
  comm->add_option("expr1", expr1, "first expression")->required();
  comm->add_option("expr2", expr2, "second expression")->required();
  comm->add_option("--ctx", ctx_path, "declarations file")->required();
  add_style_flags(comm, style);

  auto* latex = app.add_subcommand("latex", "print an expression as LaTeX");
  latex->add_option("expr", expr1, "expression")->required();
  latex->add_option("--ctx", ctx_path, "declarations file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      sq::ModelScript ms = sq::parse_script(slurp(script_path));
      sq::Context ctx = sq::build_context(ms, fermi_level_occupied);
      sq::run_script(ms, ctx, outdir, std::cout);
      return 0;
    }
    sq::Context ctx = load_context(ctx_path, fermi_level_occupied);
    if (canon->parsed()) {
      sq::SumExpr e = sq::parse_sum_expr(ctx, expr1);
      if (e.has_sums()) {
        std::cout << sq::print_sum_expr(ctx, sq::sum_simplify(ctx, e), style.pick())
                  << "\n";
      } else {
        std::cout << sq::print_expr(ctx, e.to_expr(), style.pick()) << "\n";
      }
      return 0;
    }
    if (vevc->parsed()) {
      sq::Expr e = sq::parse_expr(ctx, expr1);
      std::cout << sq::print_expr(ctx, sq::vev(ctx, e), style.pick()) << "\n";
      return 0;
    }
    if (comm->parsed()) {
      sq::SumExpr a = sq::parse_sum_expr(ctx, expr1);
      sq::SumExpr b = sq::parse_sum_expr(ctx, expr2);
      if (a.has_sums() || b.has_sums()) {
        sq::SumExpr c = sq::sum_simplify(ctx, sq::sum_commutator(ctx, a, b));
        std::cout << sq::print_sum_expr(ctx, c, style.pick()) << "\n";
      } else {
        sq::Expr c = sq::commutator(ctx, a.to_expr(), b.to_expr());
        std::cout << sq::print_expr(ctx, c, style.pick()) << "\n";
      }
      return 0;
    }
    if (latex->parsed()) {
      sq::SumExpr e = sq::parse_sum_expr(ctx, expr1);
      if (e.has_sums()) {
        std::cout << sq::print_sum_expr(ctx, sq::sum_simplify(ctx, e),
                                        sq::PrintStyle::Latex)
                  << "\n";
      } else {
        std::cout << sq::print_expr(ctx, e.to_expr(), sq::PrintStyle::Latex) << "\n";
      }
      return 0;
    }
  } catch (const sq::SymmetryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sq::LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const sq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
