#include "gengm/objective.hpp"

#include <cmath>
#include <string>

namespace gengm {

namespace {

void check_dims(const ParameterPair& theta, const CovarianceTriplet& cov,
                const RegularizationConfig& cfg) {
  if (theta.q() != cov.q() || theta.p() != cov.p() || cov.s_yx.rows() != cov.q() ||
      cov.s_yx.cols() != cov.p()) {
    throw InvalidInput("objective: theta is " + std::to_string(theta.q()) + "x" +
                       std::to_string(theta.p()) + " but covariances are " +
                       std::to_string(cov.q()) + "x" + std::to_string(cov.p()));
  }
  if (cfg.structure.dim() != theta.p()) {
    throw InvalidInput("objective: structure matrix has dim " +
                       std::to_string(cfg.structure.dim()) + ", expected " +
                       std::to_string(theta.p()));
  }
}

}  // namespace

double structural_power(double u, double beta) {
  if (u <= 0.0) return 0.0;
  if (beta == 1.0) return u;
  return std::exp(beta * std::log(u));
}

double structural_slope(double u, double beta) {
  if (beta == 1.0) return 1.0;
  if (beta > 1.0) {
    if (u <= 0.0) return 0.0;
    return beta * std::exp((beta - 1.0) * std::log(std::max(u, 1e-300)));
  }
  if (u < 1e-12) {
    throw SingularGradient("structural gradient is unbounded: beta < 1 with u_L = " +
                           std::to_string(u));
  }
  return beta * std::exp((beta - 1.0) * std::log(u));
}

double structural_term(const ParameterPair& theta, const SymmetricMatrix& structure) {
  if (structure.dim() != theta.p()) throw InvalidInput("structural_term: dimension mismatch");
  if (theta.p() == 0) return 0.0;
  const Cholesky chol = cholesky_or_throw(theta.omega_yy().matrix(), "structural_term");
  const DenseMatrix w = chol.solve(theta.omega_yx());
  return frob_inner(theta.omega_yx() * structure.matrix(), w);
}

double l1_penalty(const ParameterPair& theta, const RegularizationConfig& cfg) {
  return cfg.lambda * l1_off_diagonal(theta.omega_yy().matrix()) +
         cfg.mu * theta.omega_yx().cwiseAbs().sum();
}

std::optional<SmoothEval> try_eval_smooth(const ParameterPair& theta, const CovarianceTriplet& cov,
                                          const RegularizationConfig& cfg) {
  check_dims(theta, cov, cfg);
  const auto chol = Cholesky::factor(theta.omega_yy().matrix());
  if (!chol) return std::nullopt;

  const DenseMatrix& oyy = theta.omega_yy().matrix();
  const DenseMatrix& oyx = theta.omega_yx();
  const DenseMatrix oyy_inv = chol->inverse();
  const DenseMatrix w = oyy_inv * oyx;                    // Oyy^{-1} Oyx
  const DenseMatrix a = oyx * cov.s_xx.matrix();          // Oyx S_xx
  const DenseMatrix c = oyx * cfg.structure.matrix();     // Oyx L
  const double quad = frob_inner(a, w);
  const double u = std::max(frob_inner(c, w), 0.0);

  SmoothEval out;
  out.u_l = u;
  out.value = -chol->log_det() + frob_inner(cov.s_yy.matrix(), oyy) +
              2.0 * frob_inner(cov.s_yx, oyx) + quad;
  if (cfg.eta != 0.0) out.value += cfg.eta * structural_power(u, cfg.beta);

  const double slope = cfg.eta != 0.0 ? cfg.eta * structural_slope(u, cfg.beta) : 0.0;
  // W (S_xx + slope L) W^t = Oyy^{-1} (A + slope C) Oyx^t Oyy^{-1}
  const DenseMatrix inner = (a + slope * c) * oyx.transpose();
  DenseMatrix gyy = -oyy_inv + cov.s_yy.matrix() - oyy_inv * inner * oyy_inv;
  out.grad_yy = SymmetricMatrix(0.5 * (gyy + gyy.transpose()));
  out.grad_yx = 2.0 * cov.s_yx + 2.0 * (oyy_inv * (a + slope * c));
  return out;
}

SmoothEval eval_smooth(const ParameterPair& theta, const CovarianceTriplet& cov,
                       const RegularizationConfig& cfg) {
  auto out = try_eval_smooth(theta, cov, cfg);
  if (!out) throw NumericFailure("eval_smooth: Omega_yy is not positive definite");
  return std::move(*out);
}

double eval_objective(const ParameterPair& theta, const CovarianceTriplet& cov,
                      const RegularizationConfig& cfg) {
  check_dims(theta, cov, cfg);
  const auto chol = Cholesky::factor(theta.omega_yy().matrix());
  if (!chol) return kInfiniteObjective;
  const DenseMatrix& oyy = theta.omega_yy().matrix();
  const DenseMatrix& oyx = theta.omega_yx();
  const DenseMatrix w = chol->solve(oyx);
  double value = -chol->log_det() + frob_inner(cov.s_yy.matrix(), oyy) +
                 2.0 * frob_inner(cov.s_yx, oyx) + frob_inner(oyx * cov.s_xx.matrix(), w);
  if (cfg.eta != 0.0) {
    const double u = frob_inner(oyx * cfg.structure.matrix(), w);
    value += cfg.eta * structural_power(u, cfg.beta);
  }
  return value + l1_penalty(theta, cfg);
}

OmegaYYBlock::OmegaYYBlock(const DenseMatrix& omega_yx, const CovarianceTriplet& cov,
                           const RegularizationConfig& cfg)
    : s_yy_(cov.s_yy.matrix()),
      p_(omega_yx * cov.s_xx.matrix() * omega_yx.transpose()),
      q_(omega_yx * cfg.structure.matrix() * omega_yx.transpose()),
      linear_(2.0 * frob_inner(cov.s_yx, omega_yx)),
      eta_(cfg.eta),
      beta_(cfg.beta) {
  p_ = 0.5 * (p_ + p_.transpose());
  q_ = 0.5 * (q_ + q_.transpose());
}

std::optional<std::pair<double, DenseMatrix>> OmegaYYBlock::eval(
    const DenseMatrix& omega_yy) const {
  const auto chol = Cholesky::factor(omega_yy);
  if (!chol) return std::nullopt;
  const DenseMatrix inv = chol->inverse();
  const double u = std::max(frob_inner(inv, q_), 0.0);
  double value = -chol->log_det() + frob_inner(s_yy_, omega_yy) + linear_ + frob_inner(inv, p_);
  double slope = 0.0;
  if (eta_ != 0.0) {
    value += eta_ * structural_power(u, beta_);
    slope = eta_ * structural_slope(u, beta_);
  }
  DenseMatrix grad = -inv + s_yy_ - inv * (p_ + slope * q_) * inv;
  grad = 0.5 * (grad + grad.transpose());
  return std::make_pair(value, std::move(grad));
}

OmegaYXBlock::OmegaYXBlock(const SymmetricMatrix& omega_yy, const CovarianceTriplet& cov,
                           const RegularizationConfig& cfg)
    : s_yx_(cov.s_yx),
      s_xx_(&cov.s_xx.matrix()),
      structure_(&cfg.structure.matrix()),
      eta_(cfg.eta),
      beta_(cfg.beta) {
  const Cholesky chol = cholesky_or_throw(omega_yy.matrix(), "OmegaYXBlock");
  omega_yy_inv_ = chol.inverse();
  constant_ = -chol.log_det() + frob_inner(cov.s_yy.matrix(), omega_yy.matrix());
}

std::pair<double, DenseMatrix> OmegaYXBlock::eval(const DenseMatrix& omega_yx) const {
  const DenseMatrix a = omega_yx * (*s_xx_);
  const DenseMatrix w = omega_yy_inv_ * omega_yx;
  double value = constant_ + 2.0 * frob_inner(s_yx_, omega_yx) + frob_inner(a, w);
  if (eta_ == 0.0) {
    return {value, 2.0 * s_yx_ + 2.0 * (omega_yy_inv_ * a)};
  }
  const DenseMatrix c = omega_yx * (*structure_);
  const double u = std::max(frob_inner(c, w), 0.0);
  value += eta_ * structural_power(u, beta_);
  const double slope = eta_ * structural_slope(u, beta_);
  return {value, 2.0 * s_yx_ + 2.0 * (omega_yy_inv_ * (a + slope * c))};
}

}  // namespace gengm
