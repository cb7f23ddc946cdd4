// Criteria 8-10: the error bound, concentration of h_a / h_b, and (H2).

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "criteria.hpp"
#include "generators.hpp"
#include "gengm/evaluate.hpp"
#include "gengm/rng.hpp"
#include "gengm/simulate.hpp"
#include "gengm/solver.hpp"
#include "gengm/theory.hpp"
#include "oracles.hpp"

namespace gengm::acceptance {

using testing::Gen;

namespace {

// (H1)-valid truth: SPD Omega_yy, a sparse Omega_yx of full row rank.
ParameterPair h1_truth(Gen& g, Index q, Index p) {
  while (true) {
    DenseMatrix oyx = g.gaussian(q, p, 0.7);
    for (Index i = 0; i < q; ++i)
      for (Index j = 0; j < p; ++j)
        if (g.uniform() < 0.4) oyx(i, j) = 0.0;
    const Eigen::FullPivLU<DenseMatrix> lu(oyx);
    if (lu.rank() == q) return ParameterPair(SymmetricMatrix(g.spd(q, 0.5, 2.0)), oyx);
  }
}

}  // namespace

Outcome theorem_machinery(const Context& ctx) {
  Stopwatch clock;
  Gen g(808);
  int covered = 0, positive = 0, in_region = 0;
  double tightest = 1e300;
  for (int i = 0; i < 100; ++i) {
    const Index q = g.integer(1, 2), p = g.integer(std::max<int>(2, static_cast<int>(q)), 8);
    const ParameterPair truth = h1_truth(g, q, p);
    const double beta = g.pick({1.0, 2.0});
    const SymmetricMatrix l(DenseMatrix(first_diff_structure(p).matrix() + 0.1 * DenseMatrix::Identity(p, p)));
    const Index n = g.pick({200, 500, 1000});
    const SymmetricMatrix sigma = SymmetricMatrix::identity(p);
    const CovarianceTriplet emp = g.covariances(truth, n);

    const TheoryInputs in = TheoryInputs::from_truth(truth, sigma, l, beta);
    check_h1(in);
    const NoiseMatrices noise = empirical_noise(truth, population_covariances(truth, sigma), emp);
    const ValidityRegion region = validity_region(in, noise.h_a, noise.h_b);
    RegularizationChoice choice;
    choice.lambda = 0.5 * (region.lambda_lo + region.lambda_hi);
    choice.mu = 0.5 * (region.mu_lo + region.mu_hi);
    choice.eta = region.eta_unbounded ? 1.0 : 0.5 * region.eta_bar;
    if (region.contains(choice.lambda, choice.mu, choice.eta)) ++in_region;

    const TheoryReport rep = build_report(in, noise.h_a, noise.h_b, n, choice);
    const bool all_positive = rep.alpha.alpha > 0.0 && rep.alpha.s_alpha > 0.0 && rep.r.value > 0.0 &&
                              rep.gamma.gamma > 0.0 && rep.c_lambda_mu > 0.0 && rep.m_star > 0.0;
    if (all_positive) ++positive;

    RegularizationConfig cfg;
    cfg.lambda = choice.lambda;
    cfg.mu = choice.mu;
    cfg.eta = choice.eta;
    cfg.beta = beta;
    cfg.structure = l;
    const FitResult r = fit(emp, cfg, FitSettings{});
    const double err = std::sqrt((r.theta_hat.omega_yy().matrix() - truth.omega_yy().matrix()).squaredNorm() +
                                 (r.theta_hat.omega_yx() - truth.omega_yx()).squaredNorm());
    if (rep.bound_value >= err) ++covered;
    tightest = std::min(tightest, rep.bound_value / std::max(err, 1e-300));
    ctx.out() << "  instance " << i << ": q=" << q << " p=" << p << " n=" << n << " error " << err << " bound "
              << rep.bound_value << "\n";
  }
  const double t = clock.seconds();
  return {covered >= 95 && positive == 100 && in_region == 100 && t < 900.0,
          "bound >= realized error in " + std::to_string(covered) + "/100 (>= 95), (lambda, mu, eta) in the region " +
              std::to_string(in_region) + "/100, constants positive " + std::to_string(positive) +
              "/100, smallest bound/error ratio " + num(tightest, 3) + ", " + secs(t) + " (< 900s)"};
}

Outcome h_shrinkage(const Context& ctx) {
  Stopwatch clock;
  ScenarioSpec spec;
  spec.id = 2;
  spec.p = 50;
  spec.n_train = 1;
  spec.n_valid = 1;
  spec.seed = 909;
  const ParameterPair truth = gen_scenario(spec).truth;
  const CovarianceTriplet pop = population_covariances(truth, SymmetricMatrix::identity(spec.p));

  const Index sizes[] = {100, 1000, 10000};
  std::vector<double> med_a, med_b;
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<double> ha, hb;
    for (std::uint64_t rep = 0; rep < 50; ++rep) {
      Rng rng = Rng::stream(909 + k, rep);
      const NoiseMatrices nm = empirical_noise(truth, pop, sample_covariances(draw_dataset(truth, sizes[k], rng)));
      ha.push_back(nm.h_a);
      hb.push_back(nm.h_b);
    }
    med_a.push_back(median(ha));
    med_b.push_back(median(hb));
    ctx.out() << "  n=" << sizes[k] << " median h_a " << med_a.back() << " h_b " << med_b.back() << "\n";
  }
  const bool mono = med_a[0] > med_a[1] && med_a[1] > med_a[2] && med_b[0] > med_b[1] && med_b[1] > med_b[2];
  const double t = clock.seconds();
  return {mono && t < 300.0, "median h_a " + num(med_a[0], 3) + " > " + num(med_a[1], 3) + " > " + num(med_a[2], 3) +
                                 ", median h_b " + num(med_b[0], 3) + " > " + num(med_b[1], 3) + " > " +
                                 num(med_b[2], 3) + " for n = 100, 1000, 10000; " + secs(t) + " (< 300s)"};
}

namespace {

// All supports of size 1..s by bitmask; generalized eigenvalues of each
// restricted pencil from Eigen's dedicated solver.
RipCheck naive_rip(const DenseMatrix& sigma, const DenseMatrix& s, Index k, const DenseMatrix& oyx) {
  const Index p = sigma.rows();
  RipCheck out;
  out.worst_ratio_low = 1e300;
  out.worst_ratio_high = -1e300;
  for (unsigned mask = 1; mask < (1u << p); ++mask) {
    std::vector<Index> idx;
    for (Index j = 0; j < p; ++j)
      if (mask & (1u << j)) idx.push_back(j);
    if (static_cast<Index>(idx.size()) > k) continue;
    const Index m = static_cast<Index>(idx.size());
    DenseMatrix a(m, m), b(m, m);
    for (Index u = 0; u < m; ++u)
      for (Index v = 0; v < m; ++v) {
        a(u, v) = s(idx[u], idx[v]);
        b(u, v) = sigma(idx[u], idx[v]);
      }
    const Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(a, b);
    out.worst_ratio_low = std::min(out.worst_ratio_low, es.eigenvalues().minCoeff());
    out.worst_ratio_high = std::max(out.worst_ratio_high, es.eigenvalues().maxCoeff());
  }
  out.lambda_checked = true;
  out.lambda_condition =
      testing::eig_max(oyx * s * oyx.transpose()) <= 1.4 * testing::eig_max(oyx * sigma * oyx.transpose());
  out.holds = out.worst_ratio_low >= 0.5 && out.worst_ratio_high <= 1.5 && out.lambda_condition;
  return out;
}

}  // namespace

Outcome rip_brute_force(const Context& ctx) {
  Gen g(1010);
  const Index p = 8, s = 3, n = 500;
  int holds = 0;
  for (int i = 0; i < 50; ++i) {
    const DenseMatrix x = g.gaussian(n, p);
    const SymmetricMatrix emp(DenseMatrix(x.transpose() * x / static_cast<double>(n)));
    const RipCheck r = check_rip(SymmetricMatrix::identity(p), emp, s, g.gaussian(2, p));
    if (r.holds) ++holds;
    ctx.out() << "  trial " << i << ": ratios [" << r.worst_ratio_low << ", " << r.worst_ratio_high << "]\n";
  }

  int agree = 0;
  double worst_diff = 0.0;
  for (int i = 0; i < 10; ++i) {
    const DenseMatrix sigma = g.spd(p, 0.5, 2.0);
    const Eigen::LLT<DenseMatrix> chol(sigma);
    const DenseMatrix x = g.gaussian(i < 5 ? n : 20, p) * DenseMatrix(chol.matrixL()).transpose();
    const DenseMatrix emp = x.transpose() * x / static_cast<double>(x.rows());
    const DenseMatrix oyx = g.gaussian(2, p);
    const RipCheck fast = check_rip(SymmetricMatrix(sigma), SymmetricMatrix(emp), s, oyx);
    const RipCheck slow = naive_rip(sigma, emp, s, oyx);
    const double d = std::max(std::abs(fast.worst_ratio_low - slow.worst_ratio_low),
                              std::abs(fast.worst_ratio_high - slow.worst_ratio_high));
    worst_diff = std::max(worst_diff, d);
    if (d < 1e-9 && fast.holds == slow.holds && fast.lambda_condition == slow.lambda_condition) ++agree;
  }
  return {holds >= 45 && agree == 10, "(H2) held in " + std::to_string(holds) + "/50 trials (>= 45); naive checker agreed on " +
                                          std::to_string(agree) + "/10 instances (max ratio difference " +
                                          num(worst_diff, 3) + ")"};
}

}  // namespace gengm::acceptance
