// Command-line front end: decompose tensor products of permutative
// representation classes, test equivalence and irreducibility, and
// cross-check the closed forms against the truncated-model oracle.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuntz/expr.hpp"
#include "cuntz/jsonio.hpp"
#include "cuntz/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDepth = 3;

cuntz::EndoResolver file_aware_resolver() {
  return [](const std::string& name) -> cuntz::PermEndo {
    if (const cuntz::PermEndo* e = cuntz::find_builtin_endo(name)) return *e;
    if (name.rfind("endo:", 0) == 0)
      return cuntz::load_endo_file(name.substr(5));
    throw cuntz::EvalError("unknown endomorphism: " + name +
                           " (built-ins: psi12 psi13 rho rhobar, or "
                           "endo:<path>)");
  };
}

int pick_depth(const std::optional<int>& flag, const cuntz::Expr& e) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CUNTZ_REP_DEPTH")) {
    try {
      return std::stoi(env);
    } catch (...) {
      throw cuntz::EvalError("CUNTZ_REP_DEPTH is not an integer");
    }
  }
  return cuntz::default_depth(e);
}

struct Common {
  std::string expr_text;
  std::optional<int> depth;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_expr = true) {
  if (with_expr)
    cmd->add_option("expr", c.expr_text, "class expression")->required();
  cmd->add_option("--depth", c.depth,
                  "truncation depth for compositions and oracle models "
                  "(default: 2*max word length + 4, or CUNTZ_REP_DEPTH)");
  cmd->add_flag("--json", c.json, "emit JSON");
}

int run_decompose(const Common& c) {
  cuntz::ExprPtr e = cuntz::parse(c.expr_text);
  cuntz::EvalOptions opt;
  opt.resolve = file_aware_resolver();
  opt.depth = pick_depth(c.depth, *e);
  cuntz::check_alphabets(*e, opt.resolve);
  cuntz::Decomposition d = cuntz::eval(*e, opt);
  if (c.json)
    std::cout << cuntz::to_json(d).dump(2) << "\n";
  else
    std::cout << cuntz::print(d) << "\n";
  return kExitOk;
}

int run_equiv(const Common& c, const std::string& rhs_text) {
  cuntz::ExprPtr e1 = cuntz::parse(c.expr_text);
  cuntz::ExprPtr e2 = cuntz::parse(rhs_text);
  cuntz::EvalOptions opt;
  opt.resolve = file_aware_resolver();
  opt.depth = c.depth ? *c.depth
                      : std::max(pick_depth(c.depth, *e1),
                                 pick_depth(c.depth, *e2));
  cuntz::check_alphabets(*e1, opt.resolve);
  cuntz::check_alphabets(*e2, opt.resolve);
  cuntz::Decomposition d1 = cuntz::eval(*e1, opt);
  cuntz::Decomposition d2 = cuntz::eval(*e2, opt);
  const bool same = d1 == d2;
  if (c.json) {
    cuntz::OrderedJson out;
    out["equivalent"] = same;
    out["lhs"] = cuntz::to_json(d1);
    out["rhs"] = cuntz::to_json(d2);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (same ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int run_irreducible(const Common& c) {
  cuntz::ExprPtr e = cuntz::parse(c.expr_text);
  cuntz::EvalOptions opt;
  opt.resolve = file_aware_resolver();
  opt.depth = pick_depth(c.depth, *e);
  cuntz::check_alphabets(*e, opt.resolve);
  cuntz::Decomposition d = cuntz::eval(*e, opt);
  if (c.json) {
    cuntz::OrderedJson arr = cuntz::OrderedJson::array();
    for (const auto& [r, m] : d.components()) {
      cuntz::OrderedJson row;
      row["component"] = cuntz::print(r);
      row["multiplicity"] = cuntz::to_json(m);
      row["irreducible"] = cuntz::irreducible(r);
      arr.push_back(std::move(row));
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& [r, m] : d.components())
      std::cout << cuntz::print(r) << " "
                << (cuntz::irreducible(r) ? "irreducible" : "reducible")
                << "\n";
  }
  return kExitOk;
}

int run_oracle_check(const Common& c, const std::string& dot_path) {
  cuntz::ExprPtr e = cuntz::parse(c.expr_text);
  cuntz::EvalOptions opt;
  opt.resolve = file_aware_resolver();
  opt.depth = pick_depth(c.depth, *e);
  std::vector<cuntz::TruncatedBfs> systems;
  const cuntz::TruncatedBfs* dot_system = nullptr;
  cuntz::OracleCheck res = cuntz::oracle_check(*e, opt, &dot_system, &systems);
  if (!dot_path.empty() && dot_system) {
    std::ofstream out(dot_path);
    if (!out) throw cuntz::EvalError("cannot write dot file: " + dot_path);
    cuntz::write_dot(*dot_system, out);
  }
  if (c.json) {
    cuntz::OrderedJson out;
    out["match"] = res.match;
    out["complete"] = res.complete;
    out["formula"] = cuntz::to_json(res.formula);
    out["oracle"] = cuntz::to_json(res.oracle);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (res.match ? "MATCH" : "MISMATCH") << "\n"
              << "formula: " << cuntz::print(res.formula) << "\n"
              << "oracle:  " << cuntz::print(res.oracle)
              << (res.complete ? "" : "  [incomplete]") << "\n";
  }
  if (!res.complete) return kExitDepth;
  return res.match ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor products and branching laws of permutative "
               "representation classes of Cuntz algebras"};
  app.require_subcommand(1);

  Common c_dec, c_eq, c_irr, c_oc;
  std::string equiv_rhs, dot_path;

  CLI::App* dec = app.add_subcommand(
      "decompose", "decompose an expression into a canonical direct sum");
  add_common(dec, c_dec);

  CLI::App* eq = app.add_subcommand(
      "equiv", "decompose two expressions and compare them exactly");
  add_common(eq, c_eq);
  eq->add_option("expr2", equiv_rhs, "second expression")->required();

  CLI::App* irr = app.add_subcommand(
      "irreducible", "report irreducibility of each component");
  add_common(irr, c_irr);

  CLI::App* oc = app.add_subcommand(
      "oracle-check",
      "recompute via the truncated-model oracle and compare");
  add_common(oc, c_oc);
  oc->add_option("--dot", dot_path, "write the oracle system's graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dec->parsed()) return run_decompose(c_dec);
    if (eq->parsed()) return run_equiv(c_eq, equiv_rhs);
    if (irr->parsed()) return run_irreducible(c_irr);
    if (oc->parsed()) return run_oracle_check(c_oc, dot_path);
  } catch (const cuntz::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cuntz::DepthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDepth;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
