// Criteria 1-3: gradient, convexity and the linear-algebra lemmas.

#include <algorithm>

#include "checks.hpp"
#include "criteria.hpp"

namespace gengm::acceptance {

using testing::Gen;

Outcome gradient_oracle(const Context&) {
  Stopwatch clock;
  Gen g(101);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) worst = std::max(worst, testing::gradient_error(testing::random_problem(g, 3, 10)));
  const double t = clock.seconds();
  return {worst < 1e-4 && t < 30.0, "200 instances, max relative error " + num(worst, 3) + " (< 1e-4), " + secs(t) +
                                        " (< 30s)"};
}

Outcome convexity_suite(const Context&) {
  Stopwatch clock;
  Gen g(202);
  int violations = 0;
  double worst = -1e300;
  for (int i = 0; i < 500; ++i) {
    const double gap = testing::convexity_gap(g, 3, 10);
    worst = std::max(worst, gap);
    if (gap > 1e-8) ++violations;
  }
  const double t = clock.seconds();
  return {violations == 0 && t < 60.0, "500 segment probes, " + std::to_string(violations) +
                                           " violations, worst chord gap " + num(worst, 3) + ", " + secs(t) +
                                           " (< 60s)"};
}

Outcome lemma_suite(const Context&) {
  Stopwatch clock;
  struct Lemma {
    const char* name;
    double (*check)(Gen&);
  };
  const Lemma lemmas[] = {
      {"congruence", testing::lemma_congruence},         {"product spectrum", testing::lemma_product_spectrum},
      {"trace sandwich", testing::lemma_trace_sandwich}, {"product extremes", testing::lemma_product_extremes},
      {"quadratic trace", testing::lemma_quadratic_trace}, {"Weyl", testing::lemma_weyl},
  };
  int total = 0;
  std::string detail;
  std::uint64_t seed = 300;
  for (const Lemma& l : lemmas) {
    Gen g(++seed);
    int v = 0;
    for (int i = 0; i < 1000; ++i)
      if (l.check(g) > 0.0) ++v;
    total += v;
    detail += std::string(detail.empty() ? "" : ", ") + l.name + " " + std::to_string(v);
  }
  const double t = clock.seconds();
  return {total == 0 && t < 60.0, "1000 trials each, violations: " + detail + ", " + secs(t) + " (< 60s)"};
}

}  // namespace gengm::acceptance
