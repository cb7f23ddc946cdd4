#include <doctest.h>

#include "generators.hpp"
#include "gengm/model.hpp"
#include "oracles.hpp"

using namespace gengm;
using gengm::testing::Gen;

TEST_CASE("ParameterPair validates its blocks") {
  CHECK_NOTHROW(ParameterPair(SymmetricMatrix::identity(2), DenseMatrix::Zero(2, 3)));
  CHECK_THROWS_AS(ParameterPair(SymmetricMatrix::identity(2), DenseMatrix::Zero(3, 3)), InvalidInput);
  CHECK_THROWS_AS(ParameterPair(SymmetricMatrix::zero(2), DenseMatrix::Zero(2, 3)), InvalidInput);
  CHECK_NOTHROW(ParameterPair::unchecked(SymmetricMatrix::zero(2), DenseMatrix::Zero(2, 3)));
}

TEST_CASE("sample_covariances of a single observation") {
  Dataset d;
  d.x = DenseMatrix::Constant(1, 1, 2.0);
  d.y = DenseMatrix(1, 2);
  d.y << 1.0, 0.0;
  const CovarianceTriplet c = sample_covariances(d);
  CHECK(c.s_yy(0, 0) == 1.0);
  CHECK(c.s_yy(0, 1) == 0.0);
  CHECK(c.s_yy(1, 1) == 0.0);
  CHECK(c.s_yx(0, 0) == 2.0);
  CHECK(c.s_yx(1, 0) == 0.0);
  CHECK(c.s_xx(0, 0) == 4.0);
  CHECK(c.n == 1);
}

TEST_CASE("sample_covariances does not center") {
  DenseMatrix x(2, 1), y(2, 1);
  x << 1.0, -1.0;
  y << 3.0, 3.0;
  const CovarianceTriplet c = sample_covariances(x, y);
  CHECK(c.s_xx(0, 0) == 1.0);
  CHECK(c.s_yy(0, 0) == 9.0);
  CHECK_THROWS_AS(sample_covariances(DenseMatrix(0, 1), DenseMatrix(0, 1)), InvalidInput);
}

TEST_CASE("sample_covariances matches a double-loop oracle") {
  Gen g(7);
  const Index n = 50, p = 4, q = 2;
  const DenseMatrix x = g.gaussian(n, p);
  const DenseMatrix y = g.gaussian(n, q);
  const CovarianceTriplet c = sample_covariances(x, y);
  for (Index a = 0; a < q; ++a) {
    for (Index b = 0; b < p; ++b) {
      double s = 0.0;
      for (Index i = 0; i < n; ++i) s += y(i, a) * x(i, b);
      CHECK(c.s_yx(a, b) == doctest::Approx(s / n).epsilon(1e-12));
    }
    for (Index b = 0; b < q; ++b) {
      double s = 0.0;
      for (Index i = 0; i < n; ++i) s += y(i, a) * y(i, b);
      CHECK(c.s_yy(a, b) == doctest::Approx(s / n).epsilon(1e-12));
    }
  }
  for (Index a = 0; a < p; ++a)
    for (Index b = 0; b < p; ++b) {
      double s = 0.0;
      for (Index i = 0; i < n; ++i) s += x(i, a) * x(i, b);
      CHECK(c.s_xx(a, b) == doctest::Approx(s / n).epsilon(1e-12));
    }
}

TEST_CASE("to_regression on hand-computed cases") {
  Gen g(1);
  const DenseMatrix m = g.gaussian(2, 3);
  const RegressionForm id = to_regression(ParameterPair(SymmetricMatrix::identity(2), m));
  CHECK((id.b + m.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((id.r.matrix() - DenseMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

  const RegressionForm null = to_regression(ParameterPair(SymmetricMatrix::identity(2), DenseMatrix::Zero(2, 3)));
  CHECK(null.b.cwiseAbs().maxCoeff() == 0.0);

  Vector d(2);
  d << 2.0, 4.0;
  const RegressionForm r = to_regression(ParameterPair(SymmetricMatrix::diagonal(d), DenseMatrix::Identity(2, 2)));
  DenseMatrix expected(2, 2);
  expected << -0.5, 0.0, 0.0, -0.25;
  CHECK((r.b - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("regression round trip") {
  Gen g(2);
  for (int trial = 0; trial < 50; ++trial) {
    const ParameterPair t = g.theta(g.integer(1, 4), g.integer(1, 7));
    const ParameterPair back = from_regression(to_regression(t));
    CHECK((back.omega_yy().matrix() - t.omega_yy().matrix()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((back.omega_yx() - t.omega_yx()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("conditional_mean") {
  Gen g(3);
  const ParameterPair t = g.theta(3, 5);
  const Vector x = g.gaussian(5, 1).col(0);
  const Vector mean = conditional_mean(t, x);
  CHECK((mean - to_regression(t).b.transpose() * x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(conditional_mean(ParameterPair(t.omega_yy(), DenseMatrix::Zero(3, 5)), x).cwiseAbs().maxCoeff() == 0.0);
  const DenseMatrix oyx = g.gaussian(3, 5);
  CHECK((conditional_mean(ParameterPair(SymmetricMatrix::identity(3), oyx), x) + oyx * x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("blockwise inversion agrees with the precision blocks") {
  Gen g(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Index p = g.integer(1, 6), q = g.integer(1, 6);
    const DenseMatrix omega = g.spd(p + q);
    const DenseMatrix sigma = omega.inverse();
    const DenseMatrix oyy = omega.topLeftCorner(q, q);
    const DenseMatrix oyx = omega.topRightCorner(q, p);
    const DenseMatrix syy = sigma.topLeftCorner(q, q);
    const DenseMatrix syx = sigma.topRightCorner(q, p);
    const DenseMatrix sxx = sigma.bottomRightCorner(p, p);

    const DenseMatrix schur = syy - syx * sxx.inverse() * syx.transpose();
    CHECK((oyy.inverse() - schur).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((oyx + schur.inverse() * syx * sxx.inverse()).cwiseAbs().maxCoeff() < 1e-8);

    // population_covariances reproduces the joint covariance blocks.
    const CovarianceTriplet pop =
        population_covariances(ParameterPair(SymmetricMatrix(oyy), oyx), SymmetricMatrix(sxx));
    CHECK((pop.s_yy.matrix() - syy).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((pop.s_yx - syx).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("RegularizationConfig validation") {
  RegularizationConfig c;
  c.structure = SymmetricMatrix::identity(3);
  CHECK_NOTHROW(c.validate(3));
  CHECK_THROWS_AS(c.validate(4), InvalidInput);
  c.mu = -1.0;
  CHECK_THROWS_AS(c.validate(3), InvalidInput);
  c.mu = 0.0;
  c.beta = 0.5;
  CHECK_THROWS_AS(c.validate(3), InvalidInput);
  c.allow_unguaranteed_beta = true;
  CHECK_NOTHROW(c.validate(3));
  c.beta = 0.0;
  CHECK_THROWS_AS(c.validate(3), InvalidInput);
}

TEST_CASE("centered and select_rows") {
  Gen g(5);
  Dataset d;
  d.x = g.gaussian(6, 3);
  d.y = g.gaussian(6, 2);
  const Dataset c = centered(d);
  CHECK(c.x.colwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(c.y.colwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  const Dataset s = select_rows(d, {4, 1});
  CHECK(s.n() == 2);
  CHECK(s.x.row(0) == d.x.row(4));
  CHECK(s.y.row(1) == d.y.row(1));
  CHECK_THROWS_AS(select_rows(d, {6}), InvalidInput);

  Dataset bad;
  bad.x = g.gaussian(3, 2);
  bad.y = g.gaussian(4, 1);
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}
