#pragma once

// Constants of the non-asymptotic error bound: eigenvalue bounds, prior
// constants, the validity region of the regularization parameters, the
// local-convexity constant, the bound itself, and a brute-force check of the
// restricted-isometry hypothesis at toy scale.

#include <optional>

#include "gengm/model.hpp"

namespace gengm {

/// Largest predictor count / support size accepted by check_rip.
inline constexpr Index kRipMaxPredictors = 20;
inline constexpr Index kRipMaxSupport = 6;

struct TheoryInputs {
  ParameterPair truth;
  SymmetricMatrix sigma_xx;
  DenseMatrix sigma_yx;
  SymmetricMatrix sigma_yy;
  SymmetricMatrix structure;
  double beta = 1.0;
  /// |S|, nonzeros of the full theta*; 0 means "count from truth".
  Index active_set_size = 0;
  double c_lambda = 2.0;
  double d_lambda = 4.0;
  double e_lambda = 1.0;
  double c_mu = 2.0;
  double d_mu = 4.0;
  double e_mu = 1.0;
  /// Unset: chosen by a log-grid search maximizing gamma.
  std::optional<double> epsilon_s;
  std::optional<double> epsilon_l;
  double b3 = 0.05;
  /// Accept Omega_yx* = 0 for diagnostics; r3*, r4* are then undefined.
  bool allow_null_model = false;

  /// Builds inputs whose Sigma blocks are implied by `truth` and `sigma_xx`.
  static TheoryInputs from_truth(const ParameterPair& truth, const SymmetricMatrix& sigma_xx,
                                 const SymmetricMatrix& structure, double beta = 1.0);

  Index p() const { return truth.p(); }
  Index q() const { return truth.q(); }
  /// |S| as used by the formulas (counted when active_set_size is 0).
  Index support_size() const;
  /// Constant ranges (d > c > 1, e > 0, beta >= 1, 0 < b3 < 1) and dimensions.
  void validate() const;
};

/// Nonzero entries of (Omega_yy, Omega_yx), diagonal included.
Index count_active_set(const ParameterPair& theta, double zero_tol = 0.0);

/// Throws HypothesisViolated naming the first failed clause of
/// Sigma_xx SPD, Omega_yy SPD, Omega_yx != 0, Omega_yx L Omega_yx^t SPD.
/// The last two are skipped when in.allow_null_model is set.
void check_h1(const TheoryInputs& in);

struct EigenBoundConstants {
  double omega_l_lower = 0.0;
  double omega_l_upper = 0.0;
  double omega_s_upper = 0.0;
};
EigenBoundConstants eigen_bounds(const TheoryInputs& in);

struct PriorConstants {
  double s_l = 0.0;
  double ell_a = 0.0;
  double ell_b = 0.0;
};
PriorConstants prior_constants(const TheoryInputs& in);

struct ValidityRegion {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double mu_lo = 0.0;
  double mu_hi = 0.0;
  /// +inf when ell_a and ell_b both vanish.
  double eta_bar = 0.0;
  bool eta_unbounded = false;
  /// h_a = h_b = 0: the box collapses onto lambda = mu = 0.
  bool degenerate = false;

  bool contains(double lambda, double mu, double eta) const;
};

/// Lambda box and eta_bar. eta_bar uses (lambda, mu) when given, otherwise
/// the conservative endpoints c_lambda h_a and c_mu h_b.
ValidityRegion validity_region(const TheoryInputs& in, double h_a, double h_b,
                               std::optional<double> lambda = std::nullopt,
                               std::optional<double> mu = std::nullopt);

struct AlphaConstants {
  double alpha = 0.0;
  double s_alpha = 0.0;
};
/// Throws OutsideValidityRegion when the denominator of alpha is not positive.
AlphaConstants alpha_and_salpha(const TheoryInputs& in, double lambda, double mu, double eta);

struct RStar {
  double r1 = 0.0;
  double r2 = 0.0;
  /// Undefined for the null model.
  std::optional<double> r3;
  std::optional<double> r4;
  double value = 0.0;
};
RStar r_star(const TheoryInputs& in);

struct GammaConstant {
  double gamma = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double epsilon_s = 0.0;
  double epsilon_l = 0.0;
};

/// Gamma at explicit epsilons. Throws InvalidInput when a1 <= 0 (the
/// epsilons are too large) and OutsideValidityRegion when gamma <= 0.
GammaConstant gamma_constant(const TheoryInputs& in, double eta, Index p, double epsilon_s,
                             double epsilon_l);
/// Gamma at in.epsilon_s / in.epsilon_l, searching a 50 x 50 log grid on
/// [1e-6, 1e3]^2 for whichever is unset.
GammaConstant gamma_constant(const TheoryInputs& in, double eta, Index p);

/// max{(c_l + 1) d_l / c_l + e_l, (c_m + 1) d_m / c_m + e_m}.
double c_lambda_mu(const TheoryInputs& in);

/// |diag(Sigma_xx)|_inf + |diag(Oyy^{-1} Oyx Sigma_xx Oyx^t Oyy^{-1})|_inf.
double m_star(const ParameterPair& truth, const SymmetricMatrix& sigma_xx);

struct NoiseMatrices {
  SymmetricMatrix a_n;
  DenseMatrix b_n;
  double h_a = 0.0;
  double h_b = 0.0;
  double m_star = 0.0;
};
/// Deviation matrices of the empirical moments `emp` from the population
/// moments `pop` under the true parameters.
NoiseMatrices empirical_noise(const ParameterPair& truth, const CovarianceTriplet& pop,
                              const CovarianceTriplet& emp);

/// Lower bound on n for the theorem. Only the first and third branches are
/// computable; the branch involving the absolute constant b1 is reported by
/// its coefficient q + ceil(s_alpha) ln(p + q).
struct N0Partial {
  double branch_rate = 0.0;
  double branch_log = 0.0;
  double b1_coefficient = 0.0;
  bool b1_branch_incomputable = true;
  double value() const { return branch_rate > branch_log ? branch_rate : branch_log; }
};

struct TheoryReport {
  Index p = 0;
  Index q = 0;
  Index n = 0;
  Index active_set_size = 0;
  double b3 = 0.05;
  EigenBoundConstants eigen;
  PriorConstants prior;
  double h_a = 0.0;
  double h_b = 0.0;
  ValidityRegion region;
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  AlphaConstants alpha;
  RStar r;
  GammaConstant gamma;
  double c_lambda_mu = 0.0;
  double m_star = 0.0;
  double bound_value = 0.0;
  N0Partial n0;
};

/// 16 m* c_{lambda,mu} sqrt(|S|) / gamma * sqrt((ln(10 (p+q)^2) - ln b3) / n).
/// Throws InvalidInput when gamma <= 0 or n < 1.
double error_bound(const TheoryReport& report, Index n, Index p, Index q, Index s_size, double b3);

N0Partial n0_partial(const TheoryReport& report, Index p, Index q, Index s_size, double b3);

struct RegularizationChoice {
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;
};

/// Every constant for sample size n and noise levels (h_a, h_b). Without an
/// explicit choice, (lambda, mu, eta) = (c_lambda h_a, c_mu h_b, eta_bar / 2),
/// or eta = 0 when eta_bar is unbounded.
TheoryReport build_report(const TheoryInputs& in, double h_a, double h_b, Index n,
                          std::optional<RegularizationChoice> choice = std::nullopt);

struct RipCheck {
  bool holds = false;
  /// Extreme generalized Rayleigh quotients u^t S u / u^t Sigma u over supports.
  double worst_ratio_low = 0.0;
  double worst_ratio_high = 0.0;
  bool lambda_condition = true;
  /// False when no Omega_yx was supplied for the lambda_max clause.
  bool lambda_checked = false;
  Index supports_checked = 0;
};

/// Exhaustive check over all supports of size min(s, p). Throws
/// CapacityError above kRipMaxPredictors / kRipMaxSupport.
RipCheck check_rip(const SymmetricMatrix& sigma_xx, const SymmetricMatrix& s_xx, Index s);
/// Same, also testing lambda_max(Oyx S Oyx^t) <= 7/5 lambda_max(Oyx Sigma Oyx^t).
RipCheck check_rip(const SymmetricMatrix& sigma_xx, const SymmetricMatrix& s_xx, Index s,
                   const DenseMatrix& omega_yx);

}  // namespace gengm
