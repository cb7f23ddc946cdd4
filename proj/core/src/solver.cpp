#include "gengm/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace gengm {

namespace {

// vech coordinates of a q x q block: diagonal unpenalized, each off-diagonal
// coordinate stands for two matrix entries, hence weight 2 lambda.
Vector yy_weights(Index q, double lambda) {
  Vector w(vech_length(q));
  Index k = 0;
  for (Index j = 0; j < q; ++j)
    for (Index i = j; i < q; ++i) w(k++) = (i == j) ? 0.0 : 2.0 * lambda;
  return w;
}

Vector vech_gradient(const DenseMatrix& g) {
  const Index q = g.rows();
  Vector v(vech_length(q));
  Index k = 0;
  for (Index j = 0; j < q; ++j)
    for (Index i = j; i < q; ++i) v(k++) = (i == j) ? g(i, j) : g(i, j) + g(j, i);
  return v;
}

OwlqnResult solve_yy_block(const ParameterPair& theta, const CovarianceTriplet& cov,
                           const RegularizationConfig& cfg, const OwlqnSettings& s) {
  const Index q = theta.q();
  const OmegaYYBlock block(theta.omega_yx(), cov, cfg);
  L1Problem problem;
  problem.dim = vech_length(q);
  problem.l1_weights = yy_weights(q, cfg.lambda);
  problem.smooth_eval = [&block, q](const Vector& v) {
    SmoothValue out;
    const auto e = block.eval(unvech_dense(v, q));
    if (!e) {
      out.value = kInfiniteObjective;
      return out;
    }
    out.value = e->first;
    out.gradient = vech_gradient(e->second);
    return out;
  };
  return minimize(problem, vech(theta.omega_yy()), s);
}

OwlqnResult solve_yx_block(const ParameterPair& theta, const CovarianceTriplet& cov,
                           const RegularizationConfig& cfg, const OwlqnSettings& s) {
  const Index q = theta.q();
  const Index p = theta.p();
  const OmegaYXBlock block(theta.omega_yy(), cov, cfg);
  L1Problem problem;
  problem.dim = q * p;
  problem.l1_weights = Vector::Constant(q * p, cfg.mu);
  problem.smooth_eval = [&block, q, p](const Vector& v) {
    SmoothValue out;
    try {
      auto [value, grad] = block.eval(Eigen::Map<const DenseMatrix>(v.data(), q, p));
      out.value = value;
      out.gradient = Eigen::Map<const Vector>(grad.data(), q * p);
    } catch (const SingularGradient&) {
      out.value = kInfiniteObjective;
    }
    return out;
  };
  const DenseMatrix& start = theta.omega_yx();
  return minimize(problem, Eigen::Map<const Vector>(start.data(), q * p), s);
}

bool small_change(const DenseMatrix& now, const DenseMatrix& before, double eps) {
  return spectral_norm(now - before) <= eps * std::max(1.0, spectral_norm(before));
}

bool inner_ok(OwlqnStatus s) {
  return s == OwlqnStatus::kConverged || s == OwlqnStatus::kStalled;
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kGenGm: return "gengm";
    case Variant::kGm: return "gm";
    case Variant::kSpr: return "spr";
    case Variant::kOracle: return "oracle";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "gengm") return Variant::kGenGm;
  if (lower == "gm") return Variant::kGm;
  if (lower == "spr") return Variant::kSpr;
  if (lower == "oracle" || lower == "or") return Variant::kOracle;
  throw InvalidInput("unknown variant '" + name + "'");
}

void FitSettings::validate() const {
  if (!(epsilon > 0.0)) throw InvalidInput("FitSettings: epsilon must be > 0");
  if (max_outer <= 0) throw InvalidInput("FitSettings: max_outer must be > 0");
  if (variant == Variant::kOracle && !oracle_omega_yy) {
    throw InvalidInput("FitSettings: the oracle variant needs the true Omega_yy");
  }
  owlqn.validate();
}

ParameterPair default_init(const CovarianceTriplet& cov) {
  Vector diag(cov.q());
  for (Index i = 0; i < cov.q(); ++i) diag(i) = 1.0 / (cov.s_yy(i, i) + 0.01);
  return ParameterPair(SymmetricMatrix::diagonal(diag), DenseMatrix::Zero(cov.q(), cov.p()));
}

RegularizationConfig effective_config(const RegularizationConfig& cfg, Variant variant) {
  RegularizationConfig out = cfg;
  switch (variant) {
    case Variant::kGm: out.eta = 0.0; break;
    case Variant::kSpr:
      out.lambda = 0.0;
      out.beta = 1.0;
      break;
    case Variant::kGenGm:
    case Variant::kOracle: break;
  }
  return out;
}

FitResult fit(const CovarianceTriplet& cov, const RegularizationConfig& cfg_in, const FitSettings& s) {
  s.validate();
  cov.validate();
  const RegularizationConfig cfg = effective_config(cfg_in, s.variant);
  cfg.validate(cov.p());

  ParameterPair theta = s.init ? *s.init : default_init(cov);
  if (theta.q() != cov.q() || theta.p() != cov.p()) {
    throw InvalidInput("fit: init dimensions do not match the covariances");
  }
  if (!is_spd(theta.omega_yy())) throw InvalidInput("fit: init Omega_yy is not positive definite");
  if (s.variant == Variant::kOracle) {
    if (s.oracle_omega_yy->dim() != cov.q() || !is_spd(*s.oracle_omega_yy)) {
      throw InvalidInput("fit: oracle Omega_yy must be SPD with dimension q");
    }
    theta = ParameterPair(*s.oracle_omega_yy, theta.omega_yx());
  }

  // beta < 1 has an unbounded structural gradient at Oyx = 0; start from the
  // eta = 0 solution instead.
  if (cfg.beta < 1.0 && cfg.eta > 0.0 && cov.p() > 0 &&
      structural_term(theta, cfg.structure) < 1e-12) {
    FitSettings warm = s;
    warm.init = theta;
    RegularizationConfig plain = cfg;
    plain.eta = 0.0;
    theta = fit(cov, plain, warm).theta_hat;
    if (structural_term(theta, cfg.structure) < 1e-12) {
      throw SingularGradient("fit: beta < 1 but the eta = 0 warm start has u_L = 0");
    }
  }

  FitResult result;
  result.trace.push_back(eval_objective(theta, cov, cfg));

  for (int t = 1; t <= s.max_outer; ++t) {
    const ParameterPair previous = theta;

    if (s.variant != Variant::kOracle && cov.q() > 0) {
      const OwlqnResult r = solve_yy_block(theta, cov, cfg, s.owlqn);
      result.last_yy_status = r.status;
      theta = ParameterPair(unvech(r.solution, cov.q()), theta.omega_yx());
    }
    if (cov.p() > 0 && cov.q() > 0) {
      const OwlqnResult r = solve_yx_block(theta, cov, cfg, s.owlqn);
      result.last_yx_status = r.status;
      theta = ParameterPair(theta.omega_yy(),
                            Eigen::Map<const DenseMatrix>(r.solution.data(), cov.q(), cov.p()));
    }

    result.trace.push_back(eval_objective(theta, cov, cfg));
    result.outer_iters = t;

    const bool stop =
        small_change(theta.omega_yy().matrix(), previous.omega_yy().matrix(), s.epsilon) &&
        small_change(theta.omega_yx(), previous.omega_yx(), s.epsilon);
    if (stop) {
      result.converged = inner_ok(result.last_yy_status) && inner_ok(result.last_yx_status);
      break;
    }
  }

  result.objective = eval_objective(theta, cov, cfg);
  result.theta_hat = std::move(theta);
  return result;
}

DenseMatrix fit_lasso_baseline(const Dataset& d, double mu, const OwlqnSettings& s) {
  d.validate();
  if (d.n() < 1) throw InvalidInput("fit_lasso_baseline: empty dataset");
  if (!(mu >= 0.0)) throw InvalidInput("fit_lasso_baseline: mu must be >= 0");
  const Index p = d.p();
  const Index q = d.q();
  const double inv_n = 1.0 / static_cast<double>(d.n());
  const DenseMatrix gram = inv_n * (d.x.transpose() * d.x);
  const DenseMatrix xty = inv_n * (d.x.transpose() * d.y);
  const double c0 = 0.5 * inv_n * d.y.squaredNorm();

  L1Problem problem;
  problem.dim = p * q;
  problem.l1_weights = Vector::Constant(p * q, mu);
  problem.smooth_eval = [&](const Vector& v) {
    const Eigen::Map<const DenseMatrix> b(v.data(), p, q);
    const DenseMatrix gb = gram * b;
    SmoothValue out;
    out.value = 0.5 * frob_inner(b, gb) - frob_inner(b, xty) + c0;
    const DenseMatrix g = gb - xty;
    out.gradient = Eigen::Map<const Vector>(g.data(), p * q);
    return out;
  };
  const OwlqnResult r = minimize(problem, Vector::Zero(p * q), s);
  return Eigen::Map<const DenseMatrix>(r.solution.data(), p, q);
}

double lasso_kkt_residual(const Dataset& d, const DenseMatrix& b, double mu) {
  const double inv_n = 1.0 / static_cast<double>(d.n());
  const DenseMatrix g = inv_n * (d.x.transpose() * (d.x * b - d.y));
  double worst = 0.0;
  for (Index j = 0; j < g.cols(); ++j) {
    for (Index i = 0; i < g.rows(); ++i) {
      const double v = b(i, j);
      const double r = v != 0.0 ? std::abs(g(i, j) + mu * (v > 0.0 ? 1.0 : -1.0))
                                : std::max(0.0, std::abs(g(i, j)) - mu);
      worst = std::max(worst, r);
    }
  }
  return worst;
}

}  // namespace gengm
