#include "gengm/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "gengm/parallel.hpp"
#include "gengm/rng.hpp"

namespace gengm {
namespace {

// Test rows of each fold: a seeded shuffle dealt round-robin.
std::vector<std::vector<Index>> fold_rows(Index n, Index folds, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<Index> perm = rng.permutation(n);
  std::vector<std::vector<Index>> rows(static_cast<std::size_t>(folds));
  for (std::size_t i = 0; i < perm.size(); ++i) rows[i % rows.size()].push_back(perm[i]);
  return rows;
}

std::vector<Index> complement_rows(const std::vector<std::vector<Index>>& folds, std::size_t skip) {
  std::vector<Index> out;
  for (std::size_t g = 0; g < folds.size(); ++g) {
    if (g != skip) out.insert(out.end(), folds[g].begin(), folds[g].end());
  }
  return out;
}

}  // namespace

double mspe(const ParameterPair& theta, const Dataset& d) {
  if (d.p() != theta.p() || d.q() != theta.q() || d.x.rows() != d.y.rows()) {
    throw InvalidInput("mspe: dataset and parameter dimensions disagree");
  }
  if (d.n() == 0 || d.q() == 0) throw InvalidInput("mspe: empty validation set");
  const Cholesky chol = cholesky_or_throw(theta.omega_yy().matrix(), "mspe");
  const DenseMatrix w = chol.solve(theta.omega_yx());  // Oyy^{-1} Oyx
  const DenseMatrix residual = d.y + d.x * w.transpose();
  return residual.squaredNorm() / static_cast<double>(d.q() * d.n());
}

FScore f_score(const DenseMatrix& estimated_yx, const DenseMatrix& truth_yx, double zero_tol) {
  if (estimated_yx.rows() != truth_yx.rows() || estimated_yx.cols() != truth_yx.cols()) {
    throw InvalidInput("f_score: dimension mismatch");
  }
  FScore s;
  for (Index j = 0; j < truth_yx.cols(); ++j) {
    for (Index i = 0; i < truth_yx.rows(); ++i) {
      const bool est = std::abs(estimated_yx(i, j)) > zero_tol;
      const bool tru = std::abs(truth_yx(i, j)) > zero_tol;
      if (est && tru) ++s.true_positives;
      if (est && !tru) ++s.false_positives;
      if (!est && tru) ++s.false_negatives;
    }
  }
  if (s.true_positives + s.false_negatives == 0) {
    throw InvalidInput("f_score: the true support is empty, recall is undefined");
  }
  const auto tp = static_cast<double>(s.true_positives);
  s.precision = s.true_positives + s.false_positives == 0
                    ? 0.0
                    : tp / static_cast<double>(s.true_positives + s.false_positives);
  s.recall = tp / static_cast<double>(s.true_positives + s.false_negatives);
  s.f = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

FScore f_score(const ParameterPair& estimated, const ParameterPair& truth, double zero_tol) {
  return f_score(estimated.omega_yx(), truth.omega_yx(), zero_tol);
}

void CvGrid::validate() const {
  if (lambdas.empty() || mus.empty() || etas.empty()) throw InvalidInput("CvGrid: empty axis");
  auto nonneg = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0 && std::isfinite(x); });
  };
  if (!nonneg(lambdas) || !nonneg(mus) || !nonneg(etas)) {
    throw InvalidInput("CvGrid: grid values must be finite and >= 0");
  }
  if (folds < 2) throw InvalidInput("CvGrid: folds must be >= 2");
  if (!(beta > 0.0)) throw InvalidInput("CvGrid: beta must be > 0");
}

std::vector<double> CvGrid::log_axis(double lo, double hi, int n) {
  if (n < 1 || !(lo > 0.0) || !(hi >= lo)) throw InvalidInput("log_axis: invalid range");
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<GridFit> fit_grid(const CovarianceTriplet& cov, const SymmetricMatrix& structure,
                              const CvGrid& grid, const FitSettings& settings, int jobs) {
  grid.validate();
  const std::size_t n_eta = grid.etas.size();
  const std::size_t n_mu = grid.mus.size();
  const std::size_t pairs = grid.lambdas.size() * n_eta;

  // mu visited from largest to smallest; the sparse end is the cheap, stable start.
  std::vector<std::size_t> mu_order(n_mu);
  for (std::size_t k = 0; k < n_mu; ++k) mu_order[k] = k;
  std::stable_sort(mu_order.begin(), mu_order.end(),
                   [&](std::size_t a, std::size_t b) { return grid.mus[a] > grid.mus[b]; });

  auto run_pair = [&](std::size_t pair) {
    const std::size_t li = pair / n_eta;
    const std::size_t ei = pair % n_eta;
    std::vector<GridFit> cells(n_mu);
    FitSettings s = settings;
    for (std::size_t k : mu_order) {
      RegularizationConfig cfg;
      cfg.lambda = grid.lambdas[li];
      cfg.mu = grid.mus[k];
      cfg.eta = grid.etas[ei];
      cfg.beta = grid.beta;
      cfg.structure = structure;
      cfg.allow_unguaranteed_beta = grid.allow_unguaranteed_beta;
      GridFit& cell = cells[k];
      cell.lambda = cfg.lambda;
      cell.mu = cfg.mu;
      cell.eta = cfg.eta;
      try {
        cell.fit = fit(cov, cfg, s);
        s.init = cell.fit->theta_hat;
      } catch (const NumericFailure&) {
        cell.fit.reset();
      }
    }
    return cells;
  };

  auto per_pair = parallel_map(pairs, jobs, run_pair);
  std::vector<GridFit> out;
  out.reserve(pairs * n_mu);
  for (auto& cells : per_pair)
    for (auto& c : cells) out.push_back(std::move(c));
  return out;
}

CvResult cross_validate(const Dataset& d, const SymmetricMatrix& structure, const CvGrid& grid,
                        const FitSettings& settings, int jobs) {
  grid.validate();
  d.validate();
  if (d.n() < grid.folds) throw InvalidInput("cross_validate: fewer rows than folds");

  const auto test_rows = fold_rows(d.n(), grid.folds, grid.seed);
  const std::size_t k_folds = test_rows.size();

  const std::size_t cells = grid.lambdas.size() * grid.etas.size() * grid.mus.size();
  CvResult result;
  result.table.resize(cells);

  for (std::size_t f = 0; f < k_folds; ++f) {
    const Dataset train_set = select_rows(d, complement_rows(test_rows, f));
    const Dataset test_set = select_rows(d, test_rows[f]);
    const CovarianceTriplet cov = sample_covariances(train_set);
    const std::vector<GridFit> fits = fit_grid(cov, structure, grid, settings, jobs);
    for (std::size_t c = 0; c < cells; ++c) {
      CvCell& cell = result.table[c];
      cell.lambda = fits[c].lambda;
      cell.mu = fits[c].mu;
      cell.eta = fits[c].eta;
      double err = std::numeric_limits<double>::quiet_NaN();
      if (fits[c].fit) {
        try {
          err = mspe(fits[c].fit->theta_hat, test_set);
        } catch (const NumericFailure&) {
        }
      }
      if (!std::isfinite(err)) cell.valid = false;
      cell.fold_mspe.push_back(err);
    }
  }

  bool found = false;
  for (std::size_t c = 0; c < cells; ++c) {
    CvCell& cell = result.table[c];
    double sum = 0.0;
    for (double v : cell.fold_mspe) sum += v;
    cell.mean_mspe = sum / static_cast<double>(cell.fold_mspe.size());
    if (!cell.valid) continue;
    if (!found) {
      result.best_index = c;
      found = true;
      continue;
    }
    const CvCell& best = result.table[result.best_index];
    const bool better = cell.mean_mspe < best.mean_mspe ||
                        (cell.mean_mspe == best.mean_mspe &&
                         std::tie(cell.lambda, cell.mu, cell.eta) >
                             std::tie(best.lambda, best.mu, best.eta));
    if (better) result.best_index = c;
  }
  if (!found) throw NumericFailure("cross_validate: every grid cell failed");

  const CvCell& best = result.table[result.best_index];
  result.best.lambda = best.lambda;
  result.best.mu = best.mu;
  result.best.eta = best.eta;
  result.best.beta = grid.beta;
  result.best.structure = structure;
  result.best.allow_unguaranteed_beta = grid.allow_unguaranteed_beta;
  return result;
}

double mspe_regression(const DenseMatrix& b, const Dataset& d) {
  if (b.rows() != d.p() || b.cols() != d.q() || d.x.rows() != d.y.rows()) {
    throw InvalidInput("mspe_regression: dimensions disagree");
  }
  if (d.n() == 0 || d.q() == 0) throw InvalidInput("mspe_regression: empty validation set");
  return (d.y - d.x * b).squaredNorm() / static_cast<double>(d.q() * d.n());
}

LassoCvResult cross_validate_lasso(const Dataset& d, const std::vector<double>& mus, Index folds,
                                   std::uint64_t seed, const OwlqnSettings& settings) {
  d.validate();
  if (mus.empty()) throw InvalidInput("cross_validate_lasso: empty mu axis");
  if (folds < 2) throw InvalidInput("cross_validate_lasso: folds must be >= 2");
  if (d.n() < folds) throw InvalidInput("cross_validate_lasso: fewer rows than folds");
  const auto test_rows = fold_rows(d.n(), folds, seed);

  LassoCvResult result;
  result.table.resize(mus.size());
  for (std::size_t f = 0; f < test_rows.size(); ++f) {
    const Dataset train_set = select_rows(d, complement_rows(test_rows, f));
    const Dataset test_set = select_rows(d, test_rows[f]);
    for (std::size_t k = 0; k < mus.size(); ++k) {
      CvCell& cell = result.table[k];
      cell.mu = mus[k];
      const double err = mspe_regression(fit_lasso_baseline(train_set, mus[k], settings), test_set);
      if (!std::isfinite(err)) cell.valid = false;
      cell.fold_mspe.push_back(err);
    }
  }
  bool found = false;
  for (std::size_t k = 0; k < mus.size(); ++k) {
    CvCell& cell = result.table[k];
    double sum = 0.0;
    for (double v : cell.fold_mspe) sum += v;
    cell.mean_mspe = sum / static_cast<double>(cell.fold_mspe.size());
    if (!cell.valid) continue;
    const CvCell& best = result.table[result.best_index];
    if (!found || cell.mean_mspe < best.mean_mspe ||
        (cell.mean_mspe == best.mean_mspe && cell.mu > best.mu)) {
      result.best_index = k;
      found = true;
    }
  }
  if (!found) throw NumericFailure("cross_validate_lasso: every mu failed");
  result.best_mu = result.table[result.best_index].mu;
  return result;
}

DenseMatrix SelectionFrequency::frequency() const {
  if (repetitions == 0) return DenseMatrix::Zero(counts.rows(), counts.cols());
  return counts / static_cast<double>(repetitions);
}

DenseMatrix SelectionFrequency::retained() const {
  const DenseMatrix f = frequency();
  return (f.array() > threshold).cast<double>().matrix();
}

SelectionFrequency selection_frequency(const Dataset& d, const RegularizationConfig& cfg,
                                       const FitSettings& settings, Index repetitions,
                                       Index subsample, std::uint64_t seed, int jobs,
                                       double threshold) {
  d.validate();
  if (subsample < 1 || subsample > d.n()) {
    throw InvalidInput("selection_frequency: subsample must lie in [1, n]");
  }
  if (repetitions < 1) throw InvalidInput("selection_frequency: repetitions must be >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidInput("selection_frequency: threshold must lie in (0,1)");
  }

  auto run = [&](std::size_t rep) -> std::optional<DenseMatrix> {
    Rng rng = Rng::stream(seed, rep);
    const auto rows = rng.sample_without_replacement(d.n(), subsample);
    const CovarianceTriplet cov = sample_covariances(select_rows(d, rows));
    try {
      const FitResult r = fit(cov, cfg, settings);
      return (r.theta_hat.omega_yx().array().abs() > kSupportTolerance).cast<double>().matrix();
    } catch (const NumericFailure&) {
      return std::nullopt;
    }
  };
  const auto supports = parallel_map(static_cast<std::size_t>(repetitions), jobs, run);

  SelectionFrequency out;
  out.threshold = threshold;
  out.counts = DenseMatrix::Zero(d.q(), d.p());
  for (const auto& s : supports) {
    if (!s) {
      ++out.failed;
      continue;
    }
    out.counts += *s;
    ++out.repetitions;
  }
  return out;
}

double sign_test_p_value(Index wins, Index trials) {
  if (trials < 0 || wins < 0 || wins > trials) throw InvalidInput("sign_test_p_value: bad counts");
  const double n = static_cast<double>(trials);
  double p = 0.0;
  for (Index k = wins; k <= trials; ++k) {
    const double kk = static_cast<double>(k);
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0) -
                  n * std::log(2.0));
  }
  return std::min(1.0, p);
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("median: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    m = 0.5 * (m + lower);
  }
  return m;
}

}  // namespace gengm
