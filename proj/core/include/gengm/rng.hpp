#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gengm/linalg.hpp"

namespace gengm {

/// Seeded generator with platform-independent draws: std::mt19937_64 (fully
/// specified by the standard) for bits, Box-Muller for normals, rejection
/// sampling for bounded integers. Standard-library distributions are avoided
/// because their output is implementation-defined.
///
/// Streams: replication i of a run seeded with s uses Rng::stream(s, i), whose
/// engine seed is splitmix64(s ^ splitmix64(i + 1)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform on (0, 1), 53-bit resolution, never 0.
  double uniform();
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// +1 or -1 with equal probability.
  double sign();

  /// n x m matrix of i.i.d. standard normals, filled row by row.
  DenseMatrix normal_matrix(Index rows, Index cols);
  /// k distinct values from [0, n), in draw order (partial Fisher-Yates).
  std::vector<Index> sample_without_replacement(Index n, Index k);
  /// Uniform random permutation of 0..n-1.
  std::vector<Index> permutation(Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gengm
