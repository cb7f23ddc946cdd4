#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace gengm::acceptance {

struct Context {
  std::filesystem::path workdir;
  /// "smoke" (default) or "full" for the scaled study of criterion 5.
  std::string profile = "smoke";
  std::ostream* log = nullptr;

  std::ostream& out() const { return *log; }
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome(const Context&)> run;
};

Outcome gradient_oracle(const Context& ctx);
Outcome convexity_suite(const Context& ctx);
Outcome lemma_suite(const Context& ctx);
Outcome solver_correctness(const Context& ctx);
Outcome scenario_ordering(const Context& ctx);
Outcome variant_identities(const Context& ctx);
Outcome support_recovery(const Context& ctx);
Outcome theorem_machinery(const Context& ctx);
Outcome h_shrinkage(const Context& ctx);
Outcome rip_brute_force(const Context& ctx);
Outcome determinism(const Context& ctx);

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// "12.3s" style formatting for detail strings.
std::string secs(double s);
std::string num(double v, int precision = 4);

}  // namespace gengm::acceptance
