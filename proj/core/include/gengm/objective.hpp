#pragma once

// The penalized objective
//
//   L_n(theta) = -ln det(Oyy) + <<S_yy, Oyy>> + 2 <<S_yx, Oyx>>
//              + <<S_xx, Oyx^t Oyy^{-1} Oyx>> + eta <<L, Oyx^t Oyy^{-1} Oyx>>^beta
//              + lambda |Oyy|_1^- + mu |Oyx|_1
//
// and the gradient of its smooth part R_n (everything but the two l1 terms).

#include <limits>
#include <optional>

#include "gengm/model.hpp"

namespace gengm {

inline constexpr double kInfiniteObjective = std::numeric_limits<double>::infinity();

struct SmoothEval {
  double value = 0.0;
  SymmetricMatrix grad_yy;
  DenseMatrix grad_yx;
  /// u_L = <<L, Oyx^t Oyy^{-1} Oyx>>.
  double u_l = 0.0;
};

/// u_L. Throws InvalidInput on dimension mismatch, NumericFailure if Oyy is singular.
double structural_term(const ParameterPair& theta, const SymmetricMatrix& structure);

/// Full penalized objective; +inf when Oyy is not SPD.
double eval_objective(const ParameterPair& theta, const CovarianceTriplet& cov,
                      const RegularizationConfig& cfg);

/// R_n and its gradient blocks. Throws NumericFailure if Oyy is not SPD and
/// SingularGradient when beta < 1 and u_L vanishes.
SmoothEval eval_smooth(const ParameterPair& theta, const CovarianceTriplet& cov,
                       const RegularizationConfig& cfg);

/// As eval_smooth, but nullopt instead of throwing when Oyy is off the SPD cone.
std::optional<SmoothEval> try_eval_smooth(const ParameterPair& theta, const CovarianceTriplet& cov,
                                          const RegularizationConfig& cfg);

/// lambda |Oyy|_1^- + mu |Oyx|_1.
double l1_penalty(const ParameterPair& theta, const RegularizationConfig& cfg);

/// u^beta with u clamped at 0.
double structural_power(double u, double beta);
/// beta u^{beta-1} with the limits at u = 0 hard-coded for beta >= 1; throws
/// SingularGradient for beta < 1 and u < 1e-12.
double structural_slope(double u, double beta);

/// R_n restricted to Oyy with Oyx held fixed. The Oyx-dependent products are
/// precomputed once, so each evaluation costs O(q^3).
class OmegaYYBlock {
 public:
  OmegaYYBlock(const DenseMatrix& omega_yx, const CovarianceTriplet& cov,
               const RegularizationConfig& cfg);

  /// Value and gradient (q x q, symmetric); nullopt off the SPD cone.
  std::optional<std::pair<double, DenseMatrix>> eval(const DenseMatrix& omega_yy) const;

 private:
  DenseMatrix s_yy_;
  DenseMatrix p_;  // Oyx S_xx Oyx^t
  DenseMatrix q_;  // Oyx L Oyx^t
  double linear_;  // 2 <<S_yx, Oyx>>
  double eta_;
  double beta_;
};

/// R_n restricted to Oyx with Oyy held fixed (Oyy must be SPD).
class OmegaYXBlock {
 public:
  OmegaYXBlock(const SymmetricMatrix& omega_yy, const CovarianceTriplet& cov,
               const RegularizationConfig& cfg);

  /// Value and gradient (q x p).
  std::pair<double, DenseMatrix> eval(const DenseMatrix& omega_yx) const;

 private:
  DenseMatrix omega_yy_inv_;
  DenseMatrix s_yx_;
  const DenseMatrix* s_xx_;
  const DenseMatrix* structure_;
  double constant_;  // -ln det(Oyy) + <<S_yy, Oyy>>
  double eta_;
  double beta_;
};

}  // namespace gengm
