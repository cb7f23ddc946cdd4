#include "gengm/simulate.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gengm {

void ScenarioSpec::validate() const {
  if (id < 1 || id > 3) throw InvalidInput("ScenarioSpec: id must be 1, 2 or 3");
  if (!(std::abs(r) < 1.0)) throw InvalidInput("ScenarioSpec: |r| must be < 1");
  if (n_train < 1 || n_valid < 0) throw InvalidInput("ScenarioSpec: invalid sample sizes");
  if (id == 1 && p < 12) {
    throw InvalidInput("ScenarioSpec: scenario 1 needs p >= 12 for ten length-3 sections");
  }
  if (id == 2 && p < 1) throw InvalidInput("ScenarioSpec: scenario 2 needs p >= 1");
  if (id == 3 && p < 30) {
    throw InvalidInput("ScenarioSpec: scenario 3 needs p >= 30 for a length-30 section, got p = " +
                       std::to_string(p));
  }
}

SymmetricMatrix first_diff_structure(Index p) {
  if (p < 2) throw InvalidInput("first_diff_structure: p must be >= 2");
  DenseMatrix l = DenseMatrix::Zero(p, p);
  for (Index i = 0; i < p; ++i) {
    l(i, i) = (i == 0 || i == p - 1) ? 1.0 : 2.0;
    if (i + 1 < p) {
      l(i, i + 1) = -1.0;
      l(i + 1, i) = -1.0;
    }
  }
  return SymmetricMatrix(0.5 * l);
}

SymmetricMatrix ar_covariance(Index q, double r) {
  if (!(std::abs(r) < 1.0)) throw InvalidInput("ar_covariance: |r| must be < 1");
  DenseMatrix m(q, q);
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < q; ++j) m(i, j) = std::pow(r, static_cast<double>(std::abs(i - j)));
  return SymmetricMatrix(m);
}

DenseMatrix scenario_direct_links(const ScenarioSpec& spec, Rng& rng) {
  spec.validate();
  const Index p = spec.p;
  DenseMatrix oyx = DenseMatrix::Zero(spec.q(), p);
  switch (spec.id) {
    case 1: {
      // Ten distinct starts in [0, p-3]; later sections overwrite on overlap.
      const auto starts = rng.sample_without_replacement(p - 2, 10);
      for (Index s : starts) {
        const double omega = 0.5 * rng.sign();
        oyx.block(0, s, 1, 3).setConstant(omega);
      }
      break;
    }
    case 2: {
      const auto row = static_cast<Index>(rng.below(2));
      const double omega = 0.5 * rng.sign();
      oyx.row(row).setConstant(omega);
      break;
    }
    case 3: {
      for (Index i = 0; i < 3; ++i) {
        const double omega = 0.5 * rng.sign();
        const auto start = static_cast<Index>(rng.below(static_cast<std::uint64_t>(p - 30 + 1)));
        oyx.block(i, start, 1, 30).setConstant(omega);
      }
      break;
    }
    default: break;
  }
  return oyx;
}

Dataset draw_dataset(const ParameterPair& truth, Index n, Rng& rng) {
  const RegressionForm reg = to_regression(truth);
  const Cholesky chol = cholesky_or_throw(reg.r.matrix(), "draw_dataset");
  Dataset d;
  d.x = rng.normal_matrix(n, truth.p());
  const DenseMatrix z = rng.normal_matrix(n, truth.q());
  d.y = d.x * reg.b + z * chol.lower().transpose();
  d.truth = truth;
  d.noise_cov = reg.r;
  return d;
}

ScenarioSample gen_scenario(const ScenarioSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const SymmetricMatrix r = ar_covariance(spec.q(), spec.r);
  const DenseMatrix oyy = cholesky_or_throw(r.matrix(), "gen_scenario").inverse();
  const DenseMatrix oyx = scenario_direct_links(spec, rng);
  ParameterPair truth(SymmetricMatrix(oyy), oyx);
  Dataset train = draw_dataset(truth, spec.n_train, rng);
  Dataset valid = draw_dataset(truth, spec.n_valid, rng);
  return {std::move(train), std::move(valid), std::move(truth), r};
}

Dataset gen_weather_standin(const WeatherSpec& spec) {
  if (spec.stations < 1 || spec.days < 60) {
    throw InvalidInput("gen_weather_standin: need >= 1 station and >= 60 days");
  }
  if (!(std::abs(spec.response_correlation) < 1.0)) {
    throw InvalidInput("gen_weather_standin: |response_correlation| must be < 1");
  }
  Rng rng(spec.seed);
  const Index n = spec.stations;
  const Index p = spec.days;
  const double days = static_cast<double>(p);

  // Temperature anomalies: station-specific seasonal amplitude plus AR(1) noise.
  DenseMatrix x(n, p);
  for (Index i = 0; i < n; ++i) {
    const double amplitude = rng.normal();
    const double phase = 0.05 * days * rng.normal();
    double ar = rng.normal();
    for (Index d = 0; d < p; ++d) {
      ar = 0.9 * ar + std::sqrt(1.0 - 0.81) * rng.normal();
      const double season = std::cos(2.0 * std::numbers::pi * (static_cast<double>(d) - 200.0 + phase) / days);
      x(i, d) = amplitude * season + 0.5 * ar;
    }
  }

  auto day_at = [&](double fraction) { return static_cast<Index>(fraction * days); };
  DenseMatrix oyx = DenseMatrix::Zero(2, p);
  oyx.block(0, day_at(305.0 / 365.0), 1, day_at(365.0 / 365.0) - day_at(305.0 / 365.0)).setConstant(0.06);
  oyx.block(0, 0, 1, day_at(58.0 / 365.0)).setConstant(-0.06);
  oyx.block(1, day_at(190.0 / 365.0), 1, day_at(235.0 / 365.0) - day_at(190.0 / 365.0)).setConstant(0.04);

  const double s = spec.noise_scale;
  DenseMatrix r(2, 2);
  r << s * s, spec.response_correlation * s * s, spec.response_correlation * s * s, s * s;
  const DenseMatrix oyy = cholesky_or_throw(r, "gen_weather_standin").inverse();
  // Rescale so that the direct links stay of the stated size in regression units.
  ParameterPair truth(SymmetricMatrix(oyy), oyx / (s * s));
  const RegressionForm reg = to_regression(truth);
  const Cholesky chol = cholesky_or_throw(reg.r.matrix(), "gen_weather_standin");

  Dataset d;
  d.x = std::move(x);
  d.y = d.x * reg.b + rng.normal_matrix(n, 2) * chol.lower().transpose();
  d.truth = std::move(truth);
  d.noise_cov = reg.r;
  return d;
}

}  // namespace gengm
