#pragma once

// Synthetic data: the three structured scenarios, the AR(1) noise covariance,
// the first finite-difference structure matrix, and a weather-shaped stand-in.

#include <cstdint>

#include "gengm/model.hpp"
#include "gengm/rng.hpp"

namespace gengm {

struct ScenarioSpec {
  /// 1: ten length-3 sections in a single row (q = 1).
  /// 2: one full row of a two-row Oyx (q = 2).
  /// 3: one length-30 section per row (q = 3).
  int id = 2;
  Index p = 100;
  /// Correlation parameter of R = (r^|i-j|).
  double r = 0.5;
  Index n_train = 150;
  Index n_valid = 1000;
  std::uint64_t seed = 0;

  Index q() const { return id; }
  void validate() const;
};

struct ScenarioSample {
  Dataset train;
  Dataset valid;
  ParameterPair truth;
  SymmetricMatrix noise_cov;
};

/// (1/2) tridiag(-1, [1, 2, ..., 2, 1], -1); p >= 2.
SymmetricMatrix first_diff_structure(Index p);

/// (r^|i-j|), |r| < 1.
SymmetricMatrix ar_covariance(Index q, double r);

/// Direct links of a scenario, drawn from `rng` (the first draws of the stream).
DenseMatrix scenario_direct_links(const ScenarioSpec& spec, Rng& rng);

/// X with i.i.d. N(0, 1) entries, Y = X B + E with E rows ~ N(0, R), where
/// (B, R) = to_regression(truth). Truth and R are recorded on the result.
Dataset draw_dataset(const ParameterPair& truth, Index n, Rng& rng);

/// Draw order on Rng(spec.seed): links, then the training set, then the
/// validation set.
ScenarioSample gen_scenario(const ScenarioSpec& spec);

struct WeatherSpec {
  Index stations = 35;
  Index days = 365;
  /// Correlation between the two responses.
  double response_correlation = 0.32;
  double noise_scale = 0.15;
  std::uint64_t seed = 0;
};

/// Weather-shaped synthetic data (q = 2 responses, `days` ordered predictors
/// with a seasonal cycle plus AR(1) day-to-day noise). Direct links are
/// nonzero on contiguous runs of days: late-year positive and early-year
/// negative for response 1, a mid-summer run for response 2.
Dataset gen_weather_standin(const WeatherSpec& spec);

}  // namespace gengm
