#pragma once

// Independent transcription of the error-bound constants, computed with
// Eigen's eigensolver and explicit inverses.

#include <algorithm>
#include <cmath>

#include "gengm/theory.hpp"
#include "oracles.hpp"

namespace gengm::testing {

struct AppendixOracle {
  double omega_l_lower, omega_l_upper, omega_s_upper;
  double s_l, ell_a, ell_b;
  double r1, r2, r3, r4;
  double m_star;
  double c_lambda_mu;

  explicit AppendixOracle(const TheoryInputs& in) {
    const DenseMatrix oyy = in.truth.omega_yy().matrix();
    const DenseMatrix oyx = in.truth.omega_yx();
    const DenseMatrix l = in.structure.matrix();
    const DenseMatrix sxx = in.sigma_xx.matrix();
    const DenseMatrix inv = oyy.inverse();
    const DenseMatrix olo = oyx * l * oyx.transpose();
    const DenseMatrix oso = oyx * sxx * oyx.transpose();

    omega_l_lower = eig_min(olo) / (4.0 * eig_max(oyy));
    omega_l_upper = 4.0 * eig_max(olo) / eig_min(oyy);
    omega_s_upper = 4.0 * eig_max(oso) / eig_min(oyy);

    s_l = naive_trace(l.transpose() * oyx.transpose() * inv * oyx);
    ell_a = max_norm(inv * oyx * l * oyx.transpose() * inv);
    ell_b = 2.0 * max_norm(inv * oyx * l);

    r1 = eig_min(oyy) / 2.0;
    r2 = ((std::sqrt(10.0) - std::sqrt(7.0)) / std::sqrt(5.0)) * std::sqrt(eig_max(oso)) /
         ((3.0 * std::sqrt(3.0) / (2.0 * std::sqrt(2.0))) * std::sqrt(eig_max(sxx)));
    const DenseMatrix lo = l * oyx.transpose();
    r3 = eig_min(olo) / (4.0 * std::sqrt(eig_max(lo.transpose() * lo)));
    r4 = (std::sqrt(2.0) - 1.0) * std::sqrt(eig_max(olo)) / std::sqrt(eig_max(l));

    const DenseMatrix inner = inv * oso * inv;
    m_star = sxx.diagonal().cwiseAbs().maxCoeff() + inner.diagonal().cwiseAbs().maxCoeff();
    c_lambda_mu = std::max((in.c_lambda + 1.0) * in.d_lambda / in.c_lambda + in.e_lambda,
                           (in.c_mu + 1.0) * in.d_mu / in.c_mu + in.e_mu);
  }

  double r_star() const { return std::min({r1, r2, r3, r4}); }

  double slope(double beta) const { return beta * std::pow(s_l, beta - 1.0); }

  double alpha(const TheoryInputs& in, double lambda, double mu, double eta) const {
    const double k = eta * slope(in.beta);
    const double num = std::max((in.c_lambda + 1.0) * lambda / in.c_lambda + k * ell_a,
                                (in.c_mu + 1.0) * mu / in.c_mu + k * ell_b);
    const double den = std::min((in.c_lambda - 1.0) * lambda / in.c_lambda - k * ell_a,
                                (in.c_mu - 1.0) * mu / in.c_mu - k * ell_b);
    return num / den;
  }

  double s_alpha(const TheoryInputs& in, double alpha, double s) const {
    const DenseMatrix sxx = in.sigma_xx.matrix();
    return s * (1.0 + 12.0 * alpha * alpha * eig_max(sxx) / eig_min(sxx));
  }

  double eta_bar(const TheoryInputs& in, double h_a, double h_b, double lambda, double mu) const {
    const double m = std::min({(in.c_lambda - 1.0) * lambda / (in.c_lambda * ell_a),
                               (in.c_mu - 1.0) * mu / (in.c_mu * ell_b), in.e_lambda * h_a / ell_a,
                               in.e_mu * h_b / ell_b});
    return m / slope(in.beta);
  }

  double gamma(const TheoryInputs& in, double eta, double es, double el) const {
    const double p = static_cast<double>(in.p());
    const double b = in.beta;
    const DenseMatrix oyy = in.truth.omega_yy().matrix();
    const double a1 = 1.0 - es * omega_s_upper - eta * b * std::pow(p, b - 1.0) * std::pow(omega_l_upper, b) * el;
    const double a2 = 2.0 * es / (2.0 + es);
    const double a3 = eta * b * std::pow(p * omega_l_lower, b - 1.0) * 2.0 * el / (2.0 + el);
    const double lmax = eig_max(oyy);
    return std::min(a1 / (8.0 * lmax * lmax), a2 * eig_min(in.structure.matrix()) / (4.0 * lmax) +
                                                 a3 * eig_min(in.sigma_xx.matrix()) / (40.0 * lmax));
  }

  static double bound(double m_star, double c, double s, double gamma, Index n, Index p, Index q, double b3) {
    const double pq = static_cast<double>(p + q);
    return 16.0 * m_star * c * std::sqrt(s) / gamma *
           std::sqrt((std::log(10.0 * pq * pq) - std::log(b3)) / static_cast<double>(n));
  }
};

}  // namespace gengm::testing
