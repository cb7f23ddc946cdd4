// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>

#include "criteria.hpp"

namespace gengm::acceptance {

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

std::string num(double v, int precision) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

}  // namespace gengm::acceptance

int main(int argc, char** argv) {
  using namespace gengm::acceptance;
  CLI::App app{"gengm acceptance criteria"};
  std::string workdir = "acceptance_runs";
  std::string profile = "smoke";
  std::vector<int> only;
  bool verbose = false;
  app.add_option("--workdir", workdir, "Scratch directory for CLI runs");
  app.add_option("--profile", profile, "Scale of the scenario study")->check(CLI::IsMember({"smoke", "full"}));
  app.add_option("--only", only, "Run only these criterion numbers");
  app.add_flag("-v,--verbose", verbose, "Print per-criterion diagnostics");
  CLI11_PARSE(app, argc, argv);

  std::ostringstream sink;
  Context ctx;
  ctx.workdir = workdir;
  ctx.profile = profile;
  ctx.log = verbose ? static_cast<std::ostream*>(&std::cout) : &sink;
  std::filesystem::create_directories(ctx.workdir);

  const std::vector<Criterion> all{
      {1, "gradient oracle", gradient_oracle},
      {2, "convexity suite", convexity_suite},
      {3, "lemma suite", lemma_suite},
      {4, "solver correctness", solver_correctness},
      {5, "scenario 2 ordering (" + profile + ")", scenario_ordering},
      {6, "variant identities", variant_identities},
      {7, "support recovery", support_recovery},
      {8, "theorem machinery", theorem_machinery},
      {9, "h-shrinkage", h_shrinkage},
      {10, "RIP brute force", rip_brute_force},
      {11, "determinism", determinism},
  };
  const std::set<int> wanted(only.begin(), only.end());

  int failed = 0;
  for (const Criterion& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Stopwatch clock;
    Outcome o;
    try {
      o = c.run(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
              << secs(clock.seconds()) << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
