#include "gengm/model.hpp"

#include <string>

namespace gengm {

namespace {

void check_theta_dims(const SymmetricMatrix& omega_yy, const DenseMatrix& omega_yx) {
  if (omega_yy.dim() != omega_yx.rows()) {
    throw InvalidInput("ParameterPair: Omega_yy is " + std::to_string(omega_yy.dim()) +
                       "x" + std::to_string(omega_yy.dim()) + " but Omega_yx has " +
                       std::to_string(omega_yx.rows()) + " rows");
  }
  if (!all_finite(omega_yx)) throw InvalidInput("ParameterPair: Omega_yx has non-finite entries");
}

}  // namespace

ParameterPair::ParameterPair(SymmetricMatrix omega_yy, DenseMatrix omega_yx)
    : omega_yy_(std::move(omega_yy)), omega_yx_(std::move(omega_yx)) {
  check_theta_dims(omega_yy_, omega_yx_);
  if (!is_spd(omega_yy_)) throw InvalidInput("ParameterPair: Omega_yy is not positive definite");
}

ParameterPair ParameterPair::unchecked(SymmetricMatrix omega_yy, DenseMatrix omega_yx) {
  check_theta_dims(omega_yy, omega_yx);
  ParameterPair t;
  t.omega_yy_ = std::move(omega_yy);
  t.omega_yx_ = std::move(omega_yx);
  return t;
}

void CovarianceTriplet::validate() const {
  if (s_yx.rows() != s_yy.dim() || s_yx.cols() != s_xx.dim()) {
    throw InvalidInput("CovarianceTriplet: S_yx is " + std::to_string(s_yx.rows()) + "x" +
                       std::to_string(s_yx.cols()) + ", expected " + std::to_string(q()) +
                       "x" + std::to_string(p()));
  }
  auto check_psd = [](const SymmetricMatrix& s, const char* name) {
    if (s.dim() == 0) return;
    const auto e = eig_extremes(s);
    if (e.lambda_min < -1e-9 * std::max(e.lambda_max, 0.0)) {
      throw InvalidInput(std::string("CovarianceTriplet: ") + name + " is not PSD");
    }
  };
  check_psd(s_yy, "S_yy");
  check_psd(s_xx, "S_xx");
}

void RegularizationConfig::validate(Index p) const {
  if (!(lambda >= 0.0) || !(mu >= 0.0) || !(eta >= 0.0)) {
    throw InvalidInput("RegularizationConfig: lambda, mu, eta must be >= 0");
  }
  if (!(beta > 0.0)) throw InvalidInput("RegularizationConfig: beta must be > 0");
  if (beta < 1.0 && !allow_unguaranteed_beta) {
    throw InvalidInput("RegularizationConfig: beta < 1 requires the unguaranteed flag");
  }
  if (structure.dim() != p) {
    throw InvalidInput("RegularizationConfig: structure matrix is " +
                       std::to_string(structure.dim()) + "x" + std::to_string(structure.dim()) +
                       ", expected " + std::to_string(p) + "x" + std::to_string(p));
  }
}

void Dataset::validate() const {
  if (x.rows() != y.rows()) {
    throw InvalidInput("Dataset: X has " + std::to_string(x.rows()) + " rows, Y has " +
                       std::to_string(y.rows()));
  }
  if (!all_finite(x) || !all_finite(y)) throw InvalidInput("Dataset: non-finite values");
  if (truth && (truth->q() != q() || truth->p() != p())) {
    throw InvalidInput("Dataset: truth dimensions do not match the data");
  }
}

CovarianceTriplet sample_covariances(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows() != y.rows()) throw InvalidInput("sample_covariances: row counts differ");
  const Index n = x.rows();
  if (n < 1) throw InvalidInput("sample_covariances: empty dataset");
  const double inv_n = 1.0 / static_cast<double>(n);
  CovarianceTriplet c;
  DenseMatrix syy = inv_n * (y.transpose() * y);
  DenseMatrix sxx = inv_n * (x.transpose() * x);
  c.s_yy = SymmetricMatrix(0.5 * (syy + syy.transpose()));
  c.s_xx = SymmetricMatrix(0.5 * (sxx + sxx.transpose()));
  c.s_yx = inv_n * (y.transpose() * x);
  c.n = n;
  return c;
}

CovarianceTriplet sample_covariances(const Dataset& d) {
  d.validate();
  return sample_covariances(d.x, d.y);
}

RegressionForm to_regression(const ParameterPair& theta) {
  const Cholesky chol = cholesky_or_throw(theta.omega_yy().matrix(), "to_regression");
  const DenseMatrix r = chol.inverse();
  // B = -Omega_yx^t R
  DenseMatrix b = -(theta.omega_yx().transpose() * r);
  return {std::move(b), SymmetricMatrix(r)};
}

ParameterPair from_regression(const RegressionForm& reg) {
  if (reg.b.cols() != reg.r.dim()) throw InvalidInput("from_regression: B and R disagree on q");
  const Cholesky chol = cholesky_or_throw(reg.r.matrix(), "from_regression");
  const DenseMatrix omega_yy = chol.inverse();
  DenseMatrix omega_yx = -chol.solve(reg.b.transpose());
  return ParameterPair(SymmetricMatrix(omega_yy), std::move(omega_yx));
}

Vector conditional_mean(const ParameterPair& theta, const Vector& x_row) {
  if (x_row.size() != theta.p()) throw InvalidInput("conditional_mean: x has wrong length");
  const Cholesky chol = cholesky_or_throw(theta.omega_yy().matrix(), "conditional_mean");
  return -chol.solve(theta.omega_yx() * x_row);
}

CovarianceTriplet population_covariances(const ParameterPair& theta,
                                         const SymmetricMatrix& sigma_xx) {
  if (sigma_xx.dim() != theta.p()) throw InvalidInput("population_covariances: Sigma_xx dim");
  const RegressionForm reg = to_regression(theta);
  CovarianceTriplet c;
  c.s_xx = sigma_xx;
  c.s_yx = reg.b.transpose() * sigma_xx.matrix();
  DenseMatrix syy = reg.b.transpose() * sigma_xx.matrix() * reg.b + reg.r.matrix();
  c.s_yy = SymmetricMatrix(0.5 * (syy + syy.transpose()));
  c.n = 0;
  return c;
}

Dataset centered(const Dataset& d) {
  Dataset out = d;
  if (d.n() == 0) return out;
  out.x.rowwise() -= d.x.colwise().mean();
  out.y.rowwise() -= d.y.colwise().mean();
  return out;
}

Dataset select_rows(const Dataset& d, const std::vector<Index>& rows) {
  Dataset out;
  out.x.resize(static_cast<Index>(rows.size()), d.p());
  out.y.resize(static_cast<Index>(rows.size()), d.q());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] < 0 || rows[k] >= d.n()) throw InvalidInput("select_rows: row out of range");
    out.x.row(static_cast<Index>(k)) = d.x.row(rows[k]);
    out.y.row(static_cast<Index>(k)) = d.y.row(rows[k]);
  }
  out.truth = d.truth;
  out.noise_cov = d.noise_cov;
  return out;
}

}  // namespace gengm
