#pragma once

// Statistical value types of the partial Gaussian graphical model and the
// transforms between the precision-block and regression parametrizations.

#include <optional>

#include "gengm/linalg.hpp"

namespace gengm {

/// theta = (Omega_yy, Omega_yx): conditional precision of the responses (q x q,
/// SPD) and the direct links (q x p).
class ParameterPair {
 public:
  ParameterPair() = default;
  /// Throws InvalidInput when dimensions disagree or Omega_yy is not SPD.
  ParameterPair(SymmetricMatrix omega_yy, DenseMatrix omega_yx);

  /// Skips the SPD check; dimensions are still validated. For trial points
  /// that the objective rejects with +inf.
  static ParameterPair unchecked(SymmetricMatrix omega_yy, DenseMatrix omega_yx);

  const SymmetricMatrix& omega_yy() const { return omega_yy_; }
  const DenseMatrix& omega_yx() const { return omega_yx_; }
  Index q() const { return omega_yy_.dim(); }
  Index p() const { return omega_yx_.cols(); }

 private:
  SymmetricMatrix omega_yy_;
  DenseMatrix omega_yx_;
};

/// Empirical (or population) second moments (S_yy, S_yx, S_xx) and sample size.
struct CovarianceTriplet {
  SymmetricMatrix s_yy;
  DenseMatrix s_yx;
  SymmetricMatrix s_xx;
  Index n = 0;

  Index q() const { return s_yy.dim(); }
  Index p() const { return s_xx.dim(); }
  /// Dimension agreement and PSD-ness (lambda_min >= -1e-9 lambda_max).
  void validate() const;
};

/// Penalty weights, prior shape and structure matrix L.
struct RegularizationConfig {
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double beta = 1.0;
  SymmetricMatrix structure;
  /// Must be set to allow beta < 1, where convexity is not guaranteed.
  bool allow_unguaranteed_beta = false;

  /// Throws InvalidInput on negative weights, beta <= 0, or beta < 1 without the flag.
  void validate(Index p) const;
};

/// n observations of X (n x p) and Y (n x q), with optional ground truth.
struct Dataset {
  DenseMatrix x;
  DenseMatrix y;
  std::optional<ParameterPair> truth;
  std::optional<SymmetricMatrix> noise_cov;

  Index n() const { return x.rows(); }
  Index p() const { return x.cols(); }
  Index q() const { return y.cols(); }
  void validate() const;
};

/// Regression form Y = X B + E, E ~ N(0, R).
struct RegressionForm {
  DenseMatrix b;      // p x q
  SymmetricMatrix r;  // q x q
};

/// 1/n-normalized cross products; no centering.
CovarianceTriplet sample_covariances(const Dataset& d);
CovarianceTriplet sample_covariances(const DenseMatrix& x, const DenseMatrix& y);

/// B = -Omega_yx^t Omega_yy^{-1}, R = Omega_yy^{-1}.
RegressionForm to_regression(const ParameterPair& theta);
/// Omega_yy = R^{-1}, Omega_yx = -R^{-1} B^t.
ParameterPair from_regression(const RegressionForm& reg);

/// -Omega_yy^{-1} Omega_yx x.
Vector conditional_mean(const ParameterPair& theta, const Vector& x_row);

/// Population covariance blocks implied by theta and Sigma_xx:
/// Sigma_yx = B^t Sigma_xx, Sigma_yy = B^t Sigma_xx B + R.
CovarianceTriplet population_covariances(const ParameterPair& theta, const SymmetricMatrix& sigma_xx);

/// Subtract column means from X and Y (the library never does this implicitly).
Dataset centered(const Dataset& d);

/// Rows `rows` of `d`, in the given order; truth and noise_cov are carried over.
Dataset select_rows(const Dataset& d, const std::vector<Index>& rows);

}  // namespace gengm
