#include "gengm/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace gengm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kEpsilonGridPoints = 50;
constexpr double kEpsilonGridLo = 1e-6;
constexpr double kEpsilonGridHi = 1e3;

// x^e with the convention x^0 = 1 (also at x = 0).
double pow_or_one(double x, double e) { return e == 0.0 ? 1.0 : std::pow(x, e); }

// beta s_L^{beta-1}, the factor multiplying eta in alpha and eta_bar.
double prior_slope(double beta, double s_l) { return beta * pow_or_one(s_l, beta - 1.0); }

DenseMatrix yy_inverse_times_yx(const ParameterPair& theta) {
  return cholesky_or_throw(theta.omega_yy().matrix(), "theory").solve(theta.omega_yx());
}

double log_term(Index p, Index q, double b3) {
  const double d = static_cast<double>(p + q);
  return std::log(10.0 * d * d) - std::log(b3);
}

}  // namespace

TheoryInputs TheoryInputs::from_truth(const ParameterPair& truth, const SymmetricMatrix& sigma_xx,
                                      const SymmetricMatrix& structure, double beta) {
  const CovarianceTriplet pop = population_covariances(truth, sigma_xx);
  TheoryInputs in;
  in.truth = truth;
  in.sigma_xx = pop.s_xx;
  in.sigma_yx = pop.s_yx;
  in.sigma_yy = pop.s_yy;
  in.structure = structure;
  in.beta = beta;
  return in;
}

Index TheoryInputs::support_size() const {
  return active_set_size > 0 ? active_set_size : count_active_set(truth);
}

void TheoryInputs::validate() const {
  const Index p = truth.p();
  const Index q = truth.q();
  if (sigma_xx.dim() != p || structure.dim() != p) {
    throw InvalidInput("TheoryInputs: sigma_xx and L must be p x p");
  }
  if (sigma_yy.dim() != q || sigma_yx.rows() != q || sigma_yx.cols() != p) {
    throw InvalidInput("TheoryInputs: sigma_yy must be q x q and sigma_yx q x p");
  }
  if (!(beta >= 1.0)) throw InvalidInput("TheoryInputs: the theory requires beta >= 1");
  if (!(c_lambda > 1.0 && d_lambda > c_lambda)) {
    throw InvalidInput("TheoryInputs: need d_lambda > c_lambda > 1");
  }
  if (!(c_mu > 1.0 && d_mu > c_mu)) throw InvalidInput("TheoryInputs: need d_mu > c_mu > 1");
  if (!(e_lambda > 0.0 && e_mu > 0.0)) throw InvalidInput("TheoryInputs: e_lambda, e_mu must be > 0");
  if (!(b3 > 0.0 && b3 < 1.0)) throw InvalidInput("TheoryInputs: b3 must lie in (0,1)");
  if ((epsilon_s && !(*epsilon_s > 0.0)) || (epsilon_l && !(*epsilon_l > 0.0))) {
    throw InvalidInput("TheoryInputs: epsilon_S and epsilon_L must be > 0");
  }
  if (active_set_size < 0) throw InvalidInput("TheoryInputs: |S| must be >= 0");
}

Index count_active_set(const ParameterPair& theta, double zero_tol) {
  const auto yy = (theta.omega_yy().matrix().array().abs() > zero_tol).count();
  const auto yx = (theta.omega_yx().array().abs() > zero_tol).count();
  return static_cast<Index>(yy + yx);
}

void check_h1(const TheoryInputs& in) {
  in.validate();
  if (!is_spd(in.sigma_xx)) throw HypothesisViolated("(H1): Sigma_xx* is not positive definite");
  if (!is_spd(in.truth.omega_yy())) {
    throw HypothesisViolated("(H1): Omega_yy* is not positive definite");
  }
  if (in.allow_null_model) return;
  if (max_abs(in.truth.omega_yx()) == 0.0) {
    throw HypothesisViolated("(H1): Omega_yx* = 0 (null model; set allow_null_model for diagnostics)");
  }
  const DenseMatrix olo = in.truth.omega_yx() * in.structure.matrix() * in.truth.omega_yx().transpose();
  if (!is_spd(DenseMatrix(0.5 * (olo + olo.transpose())))) {
    throw HypothesisViolated("(H1): Omega_yx* L Omega_yx*^t is not positive definite");
  }
}

EigenBoundConstants eigen_bounds(const TheoryInputs& in) {
  check_h1(in);
  const DenseMatrix& oyx = in.truth.omega_yx();
  const EigenExtremes yy = eig_extremes(in.truth.omega_yy());
  const EigenExtremes ol = eig_extremes(SymmetricMatrix(oyx * in.structure.matrix() * oyx.transpose()));
  const EigenExtremes os = eig_extremes(SymmetricMatrix(oyx * in.sigma_xx.matrix() * oyx.transpose()));
  EigenBoundConstants c;
  c.omega_l_lower = std::max(0.0, ol.lambda_min) / (4.0 * yy.lambda_max);
  c.omega_l_upper = 4.0 * ol.lambda_max / yy.lambda_min;
  c.omega_s_upper = 4.0 * os.lambda_max / yy.lambda_min;
  return c;
}

PriorConstants prior_constants(const TheoryInputs& in) {
  in.validate();
  const DenseMatrix w = yy_inverse_times_yx(in.truth);  // Oyy^{-1} Oyx
  const DenseMatrix wl = w * in.structure.matrix();
  PriorConstants c;
  c.s_l = frob_inner(in.structure.matrix(), in.truth.omega_yx().transpose() * w);
  c.ell_a = max_abs(wl * in.truth.omega_yx().transpose() *
                    cholesky_or_throw(in.truth.omega_yy().matrix(), "theory").inverse());
  c.ell_b = 2.0 * max_abs(wl);
  return c;
}

bool ValidityRegion::contains(double lambda, double mu, double eta) const {
  return lambda >= lambda_lo && lambda <= lambda_hi && mu >= mu_lo && mu <= mu_hi && eta >= 0.0 &&
         eta <= eta_bar;
}

ValidityRegion validity_region(const TheoryInputs& in, double h_a, double h_b,
                               std::optional<double> lambda, std::optional<double> mu) {
  in.validate();
  if (!(h_a >= 0.0 && h_b >= 0.0)) throw InvalidInput("validity_region: h_a, h_b must be >= 0");
  ValidityRegion r;
  r.lambda_lo = in.c_lambda * h_a;
  r.lambda_hi = in.d_lambda * h_a;
  r.mu_lo = in.c_mu * h_b;
  r.mu_hi = in.d_mu * h_b;
  r.degenerate = h_a == 0.0 && h_b == 0.0;

  const double lam = lambda.value_or(r.lambda_lo);
  const double m = mu.value_or(r.mu_lo);
  const PriorConstants pc = prior_constants(in);
  double bound = kInf;
  if (pc.ell_a > 0.0) {
    bound = std::min(bound, (in.c_lambda - 1.0) * lam / (in.c_lambda * pc.ell_a));
    bound = std::min(bound, in.e_lambda * h_a / pc.ell_a);
  }
  if (pc.ell_b > 0.0) {
    bound = std::min(bound, (in.c_mu - 1.0) * m / (in.c_mu * pc.ell_b));
    bound = std::min(bound, in.e_mu * h_b / pc.ell_b);
  }
  const double slope = prior_slope(in.beta, pc.s_l);
  r.eta_bar = slope > 0.0 ? bound / slope : kInf;
  r.eta_unbounded = std::isinf(r.eta_bar);
  return r;
}

AlphaConstants alpha_and_salpha(const TheoryInputs& in, double lambda, double mu, double eta) {
  const PriorConstants pc = prior_constants(in);
  const double k = eta * prior_slope(in.beta, pc.s_l);
  const double num = std::max((in.c_lambda + 1.0) * lambda / in.c_lambda + k * pc.ell_a,
                              (in.c_mu + 1.0) * mu / in.c_mu + k * pc.ell_b);
  const double den = std::min((in.c_lambda - 1.0) * lambda / in.c_lambda - k * pc.ell_a,
                              (in.c_mu - 1.0) * mu / in.c_mu - k * pc.ell_b);
  if (!(den > 0.0)) {
    throw OutsideValidityRegion("alpha: denominator is not positive; (lambda, mu, eta) is outside the validity region");
  }
  const EigenExtremes sx = eig_extremes(in.sigma_xx);
  AlphaConstants c;
  c.alpha = num / den;
  c.s_alpha = static_cast<double>(in.support_size()) *
              (1.0 + 12.0 * c.alpha * c.alpha * sx.lambda_max / sx.lambda_min);
  return c;
}

RStar r_star(const TheoryInputs& in) {
  check_h1(in);
  const DenseMatrix& oyx = in.truth.omega_yx();
  const double yy_min = eig_extremes(in.truth.omega_yy()).lambda_min;
  const double os_max = lambda_max(oyx * in.sigma_xx.matrix() * oyx.transpose());
  RStar r;
  r.r1 = yy_min / 2.0;
  r.r2 = ((std::sqrt(10.0) - std::sqrt(7.0)) / std::sqrt(5.0)) * std::sqrt(std::max(0.0, os_max)) /
         ((3.0 * std::sqrt(3.0) / (2.0 * std::sqrt(2.0))) * std::sqrt(lambda_max(in.sigma_xx.matrix())));
  r.value = std::min(r.r1, r.r2);
  if (max_abs(oyx) == 0.0) return r;  // null model: r3*, r4* undefined

  const EigenExtremes ol = eig_extremes(SymmetricMatrix(oyx * in.structure.matrix() * oyx.transpose()));
  r.r3 = ol.lambda_min / (4.0 * spectral_norm(in.structure.matrix() * oyx.transpose()));
  r.r4 = (std::sqrt(2.0) - 1.0) * std::sqrt(ol.lambda_max) / std::sqrt(lambda_max(in.structure.matrix()));
  r.value = std::min({r.value, *r.r3, *r.r4});
  return r;
}

GammaConstant gamma_constant(const TheoryInputs& in, double eta, Index p, double epsilon_s,
                             double epsilon_l) {
  if (!(epsilon_s > 0.0 && epsilon_l > 0.0)) throw InvalidInput("gamma: epsilons must be > 0");
  if (!(eta >= 0.0)) throw InvalidInput("gamma: eta must be >= 0");
  const EigenBoundConstants eb = eigen_bounds(in);
  const double beta = in.beta;
  const double pp = static_cast<double>(p);
  GammaConstant g;
  g.epsilon_s = epsilon_s;
  g.epsilon_l = epsilon_l;
  g.a1 = 1.0 - epsilon_s * eb.omega_s_upper -
         eta * beta * pow_or_one(pp, beta - 1.0) * std::pow(eb.omega_l_upper, beta) * epsilon_l;
  if (!(g.a1 > 0.0)) {
    throw InvalidInput("gamma: epsilon_S omega_S + eta beta p^(beta-1) omega_L^beta epsilon_L >= 1; "
                       "choose smaller epsilon_S / epsilon_L");
  }
  g.a2 = 2.0 * epsilon_s / (2.0 + epsilon_s);
  g.a3 = eta * beta * pow_or_one(pp * eb.omega_l_lower, beta - 1.0) * 2.0 * epsilon_l / (2.0 + epsilon_l);
  const double yy_max = eig_extremes(in.truth.omega_yy()).lambda_max;
  const double l_min = std::max(0.0, lambda_min(in.structure.matrix()));
  const double sx_min = lambda_min(in.sigma_xx.matrix());
  g.gamma = std::min(g.a1 / (8.0 * yy_max * yy_max),
                     g.a2 * l_min / (4.0 * yy_max) + g.a3 * sx_min / (40.0 * yy_max));
  if (!(g.gamma > 0.0)) {
    throw OutsideValidityRegion("gamma is not positive (lambda_min(L) = 0 together with eta = 0?)");
  }
  return g;
}

GammaConstant gamma_constant(const TheoryInputs& in, double eta, Index p) {
  if (in.epsilon_s && in.epsilon_l) return gamma_constant(in, eta, p, *in.epsilon_s, *in.epsilon_l);

  std::vector<double> grid(kEpsilonGridPoints);
  const double a = std::log(kEpsilonGridLo);
  const double b = std::log(kEpsilonGridHi);
  for (int i = 0; i < kEpsilonGridPoints; ++i) {
    grid[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (kEpsilonGridPoints - 1));
  }
  const std::vector<double> s_axis = in.epsilon_s ? std::vector<double>{*in.epsilon_s} : grid;
  const std::vector<double> l_axis = in.epsilon_l ? std::vector<double>{*in.epsilon_l} : grid;

  std::optional<GammaConstant> best;
  for (double es : s_axis) {
    for (double el : l_axis) {
      try {
        const GammaConstant g = gamma_constant(in, eta, p, es, el);
        if (!best || g.gamma > best->gamma) best = g;
      } catch (const InvalidInput&) {
      } catch (const OutsideValidityRegion&) {
      }
    }
  }
  if (!best) {
    throw OutsideValidityRegion("gamma: no admissible (epsilon_S, epsilon_L) gives gamma > 0");
  }
  return *best;
}

double c_lambda_mu(const TheoryInputs& in) {
  return std::max((in.c_lambda + 1.0) * in.d_lambda / in.c_lambda + in.e_lambda,
                  (in.c_mu + 1.0) * in.d_mu / in.c_mu + in.e_mu);
}

double m_star(const ParameterPair& truth, const SymmetricMatrix& sigma_xx) {
  if (sigma_xx.dim() != truth.p()) throw InvalidInput("m_star: sigma_xx must be p x p");
  const DenseMatrix w = yy_inverse_times_yx(truth);
  const DenseMatrix wsw = w * sigma_xx.matrix() * w.transpose();
  return sigma_xx.matrix().diagonal().cwiseAbs().maxCoeff() +
         (wsw.rows() > 0 ? wsw.diagonal().cwiseAbs().maxCoeff() : 0.0);
}

NoiseMatrices empirical_noise(const ParameterPair& truth, const CovarianceTriplet& pop,
                              const CovarianceTriplet& emp) {
  const Index p = truth.p();
  const Index q = truth.q();
  for (const CovarianceTriplet* c : {&pop, &emp}) {
    if (c->q() != q || c->p() != p || c->s_yx.rows() != q || c->s_yx.cols() != p) {
      throw InvalidInput("empirical_noise: covariance dimensions disagree with theta*");
    }
  }
  const DenseMatrix w = yy_inverse_times_yx(truth);
  const DenseMatrix dxx = emp.s_xx.matrix() - pop.s_xx.matrix();
  DenseMatrix a = (emp.s_yy.matrix() - pop.s_yy.matrix()) - w * dxx * w.transpose();
  NoiseMatrices out;
  out.a_n = SymmetricMatrix(DenseMatrix(0.5 * (a + a.transpose())));
  out.b_n = 2.0 * ((emp.s_yx - pop.s_yx) + w * dxx);
  out.h_a = max_abs(out.a_n.matrix());
  out.h_b = max_abs(out.b_n);
  out.m_star = m_star(truth, pop.s_xx);
  return out;
}

double error_bound(const TheoryReport& report, Index n, Index p, Index q, Index s_size, double b3) {
  if (!(report.gamma.gamma > 0.0)) throw InvalidInput("error_bound: gamma must be > 0");
  if (n < 1) throw InvalidInput("error_bound: n must be >= 1");
  if (!(b3 > 0.0 && b3 < 1.0)) throw InvalidInput("error_bound: b3 must lie in (0,1)");
  return 16.0 * report.m_star * report.c_lambda_mu * std::sqrt(static_cast<double>(s_size)) /
         report.gamma.gamma * std::sqrt(log_term(p, q, b3) / static_cast<double>(n));
}

N0Partial n0_partial(const TheoryReport& report, Index p, Index q, Index s_size, double b3) {
  if (!(report.gamma.gamma > 0.0) || !(report.r.value > 0.0)) {
    throw InvalidInput("n0_partial: gamma and r* must be > 0");
  }
  const double lt = log_term(p, q, b3);
  const double c = report.c_lambda_mu;
  const double m16 = 16.0 * report.m_star;
  N0Partial n0;
  n0.branch_rate = lt * c * c * static_cast<double>(s_size) * m16 * m16 /
                   (report.r.value * report.r.value * report.gamma.gamma * report.gamma.gamma);
  n0.branch_log = lt;
  n0.b1_coefficient = static_cast<double>(q) +
                      std::ceil(report.alpha.s_alpha) * std::log(static_cast<double>(p + q));
  return n0;
}

TheoryReport build_report(const TheoryInputs& in, double h_a, double h_b, Index n,
                          std::optional<RegularizationChoice> choice) {
  check_h1(in);
  TheoryReport rep;
  rep.p = in.p();
  rep.q = in.q();
  rep.n = n;
  rep.active_set_size = in.support_size();
  rep.b3 = in.b3;
  rep.h_a = h_a;
  rep.h_b = h_b;
  rep.eigen = eigen_bounds(in);
  rep.prior = prior_constants(in);
  rep.region = validity_region(in, h_a, h_b);
  if (choice) {
    rep.lambda = choice->lambda;
    rep.mu = choice->mu;
    rep.eta = choice->eta;
  } else {
    rep.lambda = rep.region.lambda_lo;
    rep.mu = rep.region.mu_lo;
    rep.eta = rep.region.eta_unbounded ? 0.0 : 0.5 * rep.region.eta_bar;
  }
  rep.alpha = alpha_and_salpha(in, rep.lambda, rep.mu, rep.eta);
  rep.r = r_star(in);
  rep.gamma = gamma_constant(in, rep.eta, rep.p);
  rep.c_lambda_mu = c_lambda_mu(in);
  rep.m_star = m_star(in.truth, in.sigma_xx);
  rep.bound_value = error_bound(rep, n, rep.p, rep.q, rep.active_set_size, rep.b3);
  rep.n0 = n0_partial(rep, rep.p, rep.q, rep.active_set_size, rep.b3);
  return rep;
}

namespace {

RipCheck rip_supports(const SymmetricMatrix& sigma_xx, const SymmetricMatrix& s_xx, Index s) {
  const Index p = sigma_xx.dim();
  if (s_xx.dim() != p) throw InvalidInput("check_rip: sigma_xx and s_xx dimensions differ");
  if (s < 1) throw InvalidInput("check_rip: s must be >= 1");
  if (p > kRipMaxPredictors || s > kRipMaxSupport) {
    throw CapacityError("check_rip: brute force is capped at p <= " + std::to_string(kRipMaxPredictors) +
                        " and s <= " + std::to_string(kRipMaxSupport) +
                        "; use a Monte-Carlo check over random supports instead");
  }
  // Any u with |u|_0 <= s lives on some support of size exactly min(s, p).
  const Index k = std::min(s, p);
  std::vector<Index> idx(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;

  RipCheck out;
  out.worst_ratio_low = kInf;
  out.worst_ratio_high = -kInf;
  DenseMatrix sig(k, k);
  DenseMatrix emp(k, k);
  while (true) {
    for (Index a = 0; a < k; ++a) {
      for (Index b = 0; b < k; ++b) {
        sig(a, b) = sigma_xx(idx[a], idx[b]);
        emp(a, b) = s_xx(idx[a], idx[b]);
      }
    }
    // Pencil (S_T, Sigma_T) reduced to C^{-1} S_T C^{-t} with Sigma_T = C C^t.
    const Cholesky chol = cholesky_or_throw(sig, "check_rip: restricted Sigma_xx");
    const DenseMatrix c_inv_s = chol.lower().triangularView<Eigen::Lower>().solve(emp);
    DenseMatrix m = chol.lower().triangularView<Eigen::Lower>().solve(c_inv_s.transpose());
    m = 0.5 * (m + m.transpose()).eval();
    const EigenExtremes e = eig_extremes(m);
    out.worst_ratio_low = std::min(out.worst_ratio_low, e.lambda_min);
    out.worst_ratio_high = std::max(out.worst_ratio_high, e.lambda_max);
    ++out.supports_checked;

    // Next k-combination of {0..p-1} in lexicographic order.
    Index i = k - 1;
    while (i >= 0 && idx[i] == p - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (Index j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  out.holds = out.worst_ratio_low >= 0.5 && out.worst_ratio_high <= 1.5;
  return out;
}

}  // namespace

RipCheck check_rip(const SymmetricMatrix& sigma_xx, const SymmetricMatrix& s_xx, Index s) {
  return rip_supports(sigma_xx, s_xx, s);
}

RipCheck check_rip(const SymmetricMatrix& sigma_xx, const SymmetricMatrix& s_xx, Index s,
                   const DenseMatrix& omega_yx) {
  if (omega_yx.cols() != sigma_xx.dim()) throw InvalidInput("check_rip: Omega_yx must have p columns");
  RipCheck out = rip_supports(sigma_xx, s_xx, s);
  const DenseMatrix emp = omega_yx * s_xx.matrix() * omega_yx.transpose();
  const DenseMatrix pop = omega_yx * sigma_xx.matrix() * omega_yx.transpose();
  out.lambda_checked = true;
  out.lambda_condition = lambda_max(emp) <= 1.4 * lambda_max(pop);
  out.holds = out.holds && out.lambda_condition;
  return out;
}

}  // namespace gengm
