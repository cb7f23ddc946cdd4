#pragma once

// Prediction error, support-recovery scores, grid cross-validation and the
// repeated-subsample selection-frequency protocol.

#include <cstdint>
#include <vector>

#include "gengm/model.hpp"
#include "gengm/solver.hpp"

namespace gengm {

/// Entries with |value| <= this are read as zero when extracting supports.
inline constexpr double kSupportTolerance = 1e-8;

/// ||Y + X Oyx^t Oyy^{-1}||_F^2 / (q n).
double mspe(const ParameterPair& theta, const Dataset& d);

struct FScore {
  double f = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  Index true_positives = 0;
  Index false_positives = 0;
  Index false_negatives = 0;
};

/// Support scores on the Oyx blocks. Precision is 0 when nothing is selected;
/// a truth with empty support is rejected with InvalidInput.
FScore f_score(const DenseMatrix& estimated_yx, const DenseMatrix& truth_yx,
               double zero_tol = kSupportTolerance);
FScore f_score(const ParameterPair& estimated, const ParameterPair& truth,
               double zero_tol = kSupportTolerance);

struct CvGrid {
  std::vector<double> lambdas{0.0};
  std::vector<double> mus;
  std::vector<double> etas{0.0};
  double beta = 1.0;
  Index folds = 2;
  /// Seed of the row shuffle that assigns folds.
  std::uint64_t seed = 0;
  bool allow_unguaranteed_beta = false;

  void validate() const;
  /// n points log-spaced from lo to hi inclusive.
  static std::vector<double> log_axis(double lo, double hi, int n);
};

struct CvCell {
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  std::vector<double> fold_mspe;
  double mean_mspe = 0.0;
  bool valid = true;
};

struct CvResult {
  RegularizationConfig best;
  std::size_t best_index = 0;
  /// Cells in (lambda, eta, mu) axis order: lambda outermost, mu innermost.
  std::vector<CvCell> table;
};

struct GridFit {
  double lambda = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  /// Empty when the fit failed numerically.
  std::optional<FitResult> fit;
};

/// Fits every grid cell on `cov`. Each (lambda, eta) pair walks mu from
/// largest to smallest, warm-starting from the previous solution; pairs run
/// concurrently on `jobs` threads. Results are in CvResult::table order.
std::vector<GridFit> fit_grid(const CovarianceTriplet& cov, const SymmetricMatrix& structure,
                              const CvGrid& grid, const FitSettings& settings, int jobs = 1);

/// K-fold CV over the grid. Best cell minimizes mean held-out MSPE over valid
/// cells; exact ties go to the lexicographically largest (lambda, mu, eta).
CvResult cross_validate(const Dataset& d, const SymmetricMatrix& structure, const CvGrid& grid,
                        const FitSettings& settings, int jobs = 1);

struct LassoCvResult {
  double best_mu = 0.0;
  std::size_t best_index = 0;
  /// One cell per entry of `mus`, in the given order (lambda = eta = 0).
  std::vector<CvCell> table;
};

/// K-fold CV of the vectorized Lasso baseline over `mus`, with the same fold
/// assignment as cross_validate for equal (folds, seed). Prediction is X B.
LassoCvResult cross_validate_lasso(const Dataset& d, const std::vector<double>& mus, Index folds,
                                   std::uint64_t seed, const OwlqnSettings& settings);

/// ||Y - X B||_F^2 / (q n).
double mspe_regression(const DenseMatrix& b, const Dataset& d);

struct SelectionFrequency {
  /// q x p occurrence counts of nonzero Oyx entries.
  DenseMatrix counts;
  /// Successful repetitions (the denominator).
  Index repetitions = 0;
  Index failed = 0;
  double threshold = 0.5;

  DenseMatrix frequency() const;
  /// 1 where frequency > threshold, 0 elsewhere.
  DenseMatrix retained() const;
};

/// Fits `repetitions` times on random subsamples (without replacement) of
/// size `subsample` and counts selected Oyx entries. Repetition i draws its
/// rows from Rng::stream(seed, i).
SelectionFrequency selection_frequency(const Dataset& d, const RegularizationConfig& cfg,
                                       const FitSettings& settings, Index repetitions,
                                       Index subsample, std::uint64_t seed, int jobs = 1,
                                       double threshold = 0.5);

/// One-sided exact binomial tail P(X >= wins), X ~ Bin(trials, 1/2).
double sign_test_p_value(Index wins, Index trials);

double median(std::vector<double> values);

}  // namespace gengm
