#pragma once

// Alternating minimization of the penalized objective over (Oyy, Oyx), each
// block solved by OWL-QN, plus the vectorized Lasso baseline on B.

#include <optional>
#include <string>
#include <vector>

#include "gengm/model.hpp"
#include "gengm/objective.hpp"
#include "gengm/owlqn.hpp"

namespace gengm {

enum class Variant {
  kGenGm,   ///< full objective
  kGm,      ///< eta forced to 0
  kSpr,     ///< lambda forced to 0, beta to 1
  kOracle,  ///< Oyy fixed to a known value; only Oyx is estimated
};

std::string to_string(Variant v);
/// Accepts "gengm", "gm", "spr", "oracle" (case-insensitive).
Variant parse_variant(const std::string& name);

struct FitSettings {
  /// Outer stopping threshold on relative spectral-norm changes.
  double epsilon = 1e-4;
  int max_outer = 100;
  Variant variant = Variant::kGenGm;
  /// Defaults to default_init(cov) when empty.
  std::optional<ParameterPair> init;
  /// Required for Variant::kOracle.
  std::optional<SymmetricMatrix> oracle_omega_yy;
  OwlqnSettings owlqn;

  void validate() const;
};

struct FitResult {
  ParameterPair theta_hat;
  double objective = 0.0;
  int outer_iters = 0;
  bool converged = false;
  /// Objective at the start point and after each outer iteration.
  std::vector<double> trace;
  /// Status of the last Oyy and Oyx inner solves.
  OwlqnStatus last_yy_status = OwlqnStatus::kConverged;
  OwlqnStatus last_yx_status = OwlqnStatus::kConverged;
};

/// Oyy = diag(1 / (S_yy,ii + 0.01)), Oyx = 0.
ParameterPair default_init(const CovarianceTriplet& cov);

/// Applies the variant's forced parameter values.
RegularizationConfig effective_config(const RegularizationConfig& cfg, Variant variant);

FitResult fit(const CovarianceTriplet& cov, const RegularizationConfig& cfg, const FitSettings& s);

/// argmin (1/2n) ||Y - X B||_F^2 + mu |vec(B)|_1, returned as p x q.
DenseMatrix fit_lasso_baseline(const Dataset& d, double mu, const OwlqnSettings& s);

/// Max-norm violation of the Lasso optimality conditions at B.
double lasso_kkt_residual(const Dataset& d, const DenseMatrix& b, double mu);

}  // namespace gengm
