// ncwres: boundary and interior residue terms for nonminimal de Rham-Hodge operators.
//
//   ncwres --dim 4 --left D --right Dstar --a 1 --b 1 [--json out.json]
//   ncwres verify --suite all
//
// Exit codes: 0 ok, 2 a computed value disagrees with a reference value, 1 error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "ncwres/report.hpp"
#include "ncwres/verify.hpp"

#ifndef NCWRES_DEFAULT_GOLDEN
#define NCWRES_DEFAULT_GOLDEN "data/golden.json"
#endif

namespace {

using namespace ncwres;

// --golden, then NCWRES_GOLDEN, then the compiled default.
std::optional<GoldenFile> resolve_golden(const std::string& flag, bool no_golden) {
  if (no_golden)
    return std::nullopt;
  if (!flag.empty())
    return load_golden(flag);
  if (const char* env = std::getenv("NCWRES_GOLDEN"); env && *env)
    return load_golden(env);
  if (!std::filesystem::exists(NCWRES_DEFAULT_GOLDEN)) {
    std::cerr << "note: no reference file at " << NCWRES_DEFAULT_GOLDEN << ", reference checks skipped\n";
    return std::nullopt;
  }
  return load_golden(NCWRES_DEFAULT_GOLDEN);
}

void print_diff(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.is_mismatch())
      continue;
    Json d = check_json(c);
    std::cerr << "diff " << d.dump() << "\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary and interior residue terms for nonminimal de Rham-Hodge operators"};
  app.fallthrough();

  RunConfig cfg;
  std::string left = "D", right = "Dstar", a = "1", b = "1", json_path, golden_path, suite = "all";
  bool quiet = false, no_golden = false, serial = false;

  app.add_option("--dim", cfg.dim, "manifold dimension (3 or 4)")->capture_default_str();
  app.add_option("--left", left, "left operator: D or Dstar")->capture_default_str();
  app.add_option("--right", right, "right operator: D or Dstar")->capture_default_str();
  app.add_option("--a", a, "rational coefficient of d, as p or p/q")->capture_default_str();
  app.add_option("--b", b, "rational coefficient of delta, as p or p/q")->capture_default_str();
  app.add_option("--samples", cfg.xi_samples, "tangential covector samples per parameter point")
      ->capture_default_str();
  app.add_option("--ab-samples", cfg.ab_samples, "parameter points used for coefficient reconstruction")
      ->capture_default_str();
  app.add_option("--json", json_path, "write the report as JSON to this path");
  app.add_option("--golden", golden_path, "reference value file (overrides NCWRES_GOLDEN)");
  app.add_flag("--no-golden", no_golden, "skip reference checks");
  app.add_flag("--serial", serial, "evaluate parameter points on one thread");
  app.add_flag("-q,--quiet", quiet, "do not print the text report");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant and reference suites");
  verify->add_option("--suite", suite, "algebra, lemmas, cases or all")
      ->check(CLI::IsMember({"algebra", "lemmas", "cases", "all"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    cfg.parallel = !serial;
    if (*verify) {
      auto gf = resolve_golden(golden_path, false);
      if (!gf)
        throw std::runtime_error("verify needs a reference file (--golden or NCWRES_GOLDEN)");
      GoldenRunner g(std::move(*gf), cfg.options());
      SuiteResult r = run_suite(suite, g);
      print_suite(r, std::cout);
      return r.exit_code();
    }

    cfg.left = parse_operator(left);
    cfg.right = parse_operator(right);
    cfg.a = parse_rational(a);
    cfg.b = parse_rational(b);
    cfg.validate();

    std::optional<GoldenRunner> g;
    if (auto gf = resolve_golden(golden_path, no_golden))
      g.emplace(std::move(*gf), cfg.options());
    Report rep = build_report(cfg, g ? &*g : nullptr);

    if (!json_path.empty()) {
      std::ofstream out(json_path, std::ios::binary);
      if (!out)
        throw std::runtime_error("cannot write " + json_path);
      out << rep.json.dump(2) << "\n";
    }
    if (!quiet)
      print_report(rep, std::cout);
    print_diff(rep.checks);
    return rep.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
