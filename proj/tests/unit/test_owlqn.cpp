#include <doctest.h>

#include <cmath>
#include <limits>

#include "generators.hpp"
#include "gengm/owlqn.hpp"
#include "oracles.hpp"

using namespace gengm;
using gengm::testing::Gen;

namespace {

L1Problem scalar_problem(double target, double w) {
  L1Problem p;
  p.dim = 1;
  p.l1_weights = Vector::Constant(1, w);
  p.smooth_eval = [target](const Vector& v) {
    return SmoothValue{0.5 * (v(0) - target) * (v(0) - target), Vector::Constant(1, v(0) - target)};
  };
  return p;
}

// (1/2n)||y - X b||^2 with its gradient.
L1Problem lasso_problem(const DenseMatrix& x, const Vector& y, double mu) {
  L1Problem p;
  p.dim = x.cols();
  p.l1_weights = Vector::Constant(x.cols(), mu);
  const double n = static_cast<double>(x.rows());
  p.smooth_eval = [x, y, n](const Vector& b) {
    const Vector r = y - x * b;
    return SmoothValue{0.5 * r.squaredNorm() / n, -x.transpose() * r / n};
  };
  return p;
}

double composite(const L1Problem& p, const Vector& v) {
  return p.smooth_eval(v).value + p.l1_weights.cwiseProduct(v.cwiseAbs()).sum();
}

}  // namespace

TEST_CASE("pseudo_gradient rules") {
  const Vector v0 = Vector::Zero(1);
  CHECK(pseudo_gradient(v0, Vector::Constant(1, 0.3), Vector::Constant(1, 0.5))(0) == 0.0);
  CHECK(pseudo_gradient(v0, Vector::Constant(1, -0.9), Vector::Constant(1, 0.5))(0) == doctest::Approx(-0.4));
  CHECK(pseudo_gradient(v0, Vector::Constant(1, 0.9), Vector::Constant(1, 0.5))(0) == doctest::Approx(0.4));
  CHECK(pseudo_gradient(Vector::Constant(1, -2.0), Vector::Constant(1, 0.1), Vector::Constant(1, 0.5))(0) ==
        doctest::Approx(-0.4));

  Gen g(1);
  const Vector grad = g.gaussian(6, 1).col(0);
  const Vector v = g.gaussian(6, 1).col(0);
  CHECK(pseudo_gradient(v, grad, Vector::Zero(6)) == grad);
  CHECK_THROWS_AS(pseudo_gradient(v, grad, Vector::Zero(5)), InvalidInput);
}

TEST_CASE("scalar soft thresholding") {
  OwlqnSettings s;
  const OwlqnResult a = minimize(scalar_problem(1.0, 0.5), Vector::Constant(1, 3.0), s);
  CHECK(a.converged);
  CHECK(a.solution(0) == doctest::Approx(0.5).epsilon(1e-6));
  const OwlqnResult b = minimize(scalar_problem(0.3, 0.5), Vector::Constant(1, 3.0), s);
  CHECK(b.solution(0) == 0.0);
  const OwlqnResult c = minimize(scalar_problem(-2.0, 0.5), Vector::Constant(1, 0.0), s);
  CHECK(c.solution(0) == doctest::Approx(-1.5).epsilon(1e-6));
}

TEST_CASE("unpenalized quadratic bowl") {
  Gen g(2);
  const DenseMatrix a = g.spd(10);
  const Vector b = g.gaussian(10, 1).col(0);
  L1Problem p;
  p.dim = 10;
  p.l1_weights = Vector::Zero(10);
  p.smooth_eval = [&](const Vector& v) { return SmoothValue{0.5 * v.dot(a * v) - b.dot(v), a * v - b}; };
  OwlqnSettings s;
  s.grad_tol = 1e-10;
  const OwlqnResult r = minimize(p, Vector::Zero(10), s);
  CHECK(r.converged);
  const Vector exact = a.ldlt().solve(b);
  CHECK((r.solution - exact).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("lasso agrees with coordinate descent") {
  Gen g(3);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix x = g.gaussian(60, 20);
    Vector beta = Vector::Zero(20);
    for (int k = 0; k < 5; ++k) beta(g.integer(0, 19)) = g.uniform(-2.0, 2.0);
    const Vector y = x * beta + 0.5 * g.gaussian(60, 1).col(0);
    const double mu = g.uniform(0.05, 0.3);
    OwlqnSettings s;
    s.grad_tol = 1e-10;
    s.max_iters = 5000;
    const OwlqnResult r = minimize(lasso_problem(x, y, mu), Vector::Zero(20), s);
    const Vector ref = testing::lasso_coordinate_descent(x, y, mu);
    CHECK((r.solution - ref).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("objective trace is nonincreasing and value matches the solution") {
  Gen g(4);
  const DenseMatrix x = g.gaussian(40, 12);
  const Vector y = g.gaussian(40, 1).col(0);
  const L1Problem p = lasso_problem(x, y, 0.1);
  const OwlqnResult r = minimize(p, g.gaussian(12, 1).col(0), OwlqnSettings{});
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
  CHECK(r.value == doctest::Approx(composite(p, r.solution)).epsilon(1e-12));
  if (r.converged) CHECK(r.pseudo_grad_norm <= 1e-6);
}

TEST_CASE("line search backtracks through +inf") {
  // Smooth part defined only on v > 0.1: -log(v - 0.1) + v^2.
  L1Problem p;
  p.dim = 1;
  p.l1_weights = Vector::Zero(1);
  p.smooth_eval = [](const Vector& v) {
    if (v(0) <= 0.1) return SmoothValue{std::numeric_limits<double>::infinity(), Vector::Zero(1)};
    return SmoothValue{-std::log(v(0) - 0.1) + v(0) * v(0), Vector::Constant(1, -1.0 / (v(0) - 0.1) + 2.0 * v(0))};
  };
  const OwlqnResult r = minimize(p, Vector::Constant(1, 5.0), OwlqnSettings{});
  CHECK(r.converged);
  // Stationary point: 2v^2 - 0.2v - 1 = 0.
  CHECK(r.solution(0) == doctest::Approx((0.2 + std::sqrt(0.04 + 8.0)) / 4.0).epsilon(1e-6));

  CHECK_THROWS_AS(minimize(p, Vector::Constant(1, 0.0), OwlqnSettings{}), InvalidInput);
}

TEST_CASE("settings and problem validation") {
  OwlqnSettings s;
  s.backtrack_factor = 1.0;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  L1Problem p = scalar_problem(0.0, 1.0);
  p.l1_weights = Vector::Constant(1, -1.0);
  CHECK_THROWS_AS(p.validate(), InvalidInput);
}

TEST_CASE("zero coordinates with dominant weights stay at zero") {
  Gen g(5);
  const DenseMatrix x = g.gaussian(50, 8);
  const Vector y = g.gaussian(50, 1).col(0);
  const double mu_max = (x.transpose() * y).cwiseAbs().maxCoeff() / 50.0;
  const OwlqnResult r = minimize(lasso_problem(x, y, 1.01 * mu_max), Vector::Zero(8), OwlqnSettings{});
  CHECK(r.solution.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.converged);
}
