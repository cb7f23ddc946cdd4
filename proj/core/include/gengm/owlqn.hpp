#pragma once

// Orthant-wise limited-memory quasi-Newton minimization of
//   F(v) = smooth(v) + sum_i w_i |v_i|
// where smooth may return +inf (e.g. outside a cone); the line search then
// backtracks instead of failing.

#include <functional>
#include <string>

#include "gengm/linalg.hpp"

namespace gengm {

struct SmoothValue {
  /// May be +inf; the gradient is ignored in that case.
  double value = 0.0;
  Vector gradient;
};

using SmoothFunction = std::function<SmoothValue(const Vector&)>;

struct L1Problem {
  Index dim = 0;
  SmoothFunction smooth_eval;
  /// w_i >= 0; w_i = 0 leaves coordinate i unpenalized and unprojected.
  Vector l1_weights;

  void validate() const;
};

struct OwlqnSettings {
  int memory = 10;
  int max_iters = 500;
  /// Convergence when the max-norm of the pseudo-gradient falls below this.
  double grad_tol = 1e-6;
  double backtrack_factor = 0.5;
  int max_line_search = 50;
  /// Armijo sufficient-decrease constant.
  double armijo = 1e-4;
  /// Stop early when an accepted step lowers F by less than
  /// rel_decrease_tol * max(1, |F|). Zero disables the test.
  double rel_decrease_tol = 0.0;

  void validate() const;
};

enum class OwlqnStatus {
  kConverged,
  kMaxIterations,
  kLineSearchFailed,
  kStalled,
};

std::string to_string(OwlqnStatus s);

struct OwlqnResult {
  Vector solution;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double pseudo_grad_norm = 0.0;
  OwlqnStatus status = OwlqnStatus::kMaxIterations;
  /// F at every accepted iterate, starting with F(start).
  std::vector<double> trace;
};

/// Minimum-norm subgradient of the composite objective at v.
Vector pseudo_gradient(const Vector& v, const Vector& grad, const Vector& weights);

/// Throws InvalidInput when start is not finite or smooth_eval(start) is infinite.
OwlqnResult minimize(const L1Problem& problem, const Vector& start, const OwlqnSettings& settings);

}  // namespace gengm
