#pragma once

// Dense real matrix kernel shared by every other module.
//
// Storage and arithmetic are Eigen's; SPD testing (Cholesky with a scaled
// pivot tolerance) and the symmetric eigensolver (cyclic Jacobi) are
// implemented here so their tolerances are under our control.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gengm/error.hpp"

namespace gengm {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative tolerance (to max |entry|) for accepting a matrix as symmetric.
inline constexpr double kSymmetryTolerance = 1e-8;
/// Off-diagonal Frobenius threshold (relative) at which Jacobi sweeps stop.
inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Square matrix that is symmetric within kSymmetryTolerance. The stored
/// value is the exact symmetrized average of the input.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  /// Throws InvalidInput if `m` is non-square, non-finite or asymmetric.
  explicit SymmetricMatrix(const DenseMatrix& m);

  static SymmetricMatrix identity(Index dim);
  static SymmetricMatrix zero(Index dim);
  static SymmetricMatrix diagonal(const Vector& d);

  Index dim() const { return m_.rows(); }
  const DenseMatrix& matrix() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  DenseMatrix m_;
};

/// Lower-triangular Cholesky factor of an SPD matrix.
class Cholesky {
 public:
  /// Returns nullopt when some pivot is <= 1e-12 * dim * max diagonal, or the
  /// input is not square/finite.
  static std::optional<Cholesky> factor(const DenseMatrix& a);

  Index dim() const { return lower_.rows(); }
  const DenseMatrix& lower() const { return lower_; }
  /// ln det(A) as twice the sum of log pivots.
  double log_det() const;
  /// A^{-1} b.
  DenseMatrix solve(const DenseMatrix& b) const;
  DenseMatrix inverse() const;

 private:
  explicit Cholesky(DenseMatrix lower) : lower_(std::move(lower)) {}
  DenseMatrix lower_;
};

/// Factor or throw NumericFailure with `what` in the message.
Cholesky cholesky_or_throw(const DenseMatrix& a, const char* what);

bool is_spd(const SymmetricMatrix& m);
/// Raw-matrix overload: throws InvalidInput for non-square or non-finite input.
bool is_spd(const DenseMatrix& m);

struct EigenExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// All eigenvalues in decreasing order (cyclic Jacobi).
Vector symmetric_eigenvalues(const DenseMatrix& m);
/// Eigenvalues (decreasing) and matching eigenvectors as columns.
std::pair<Vector, DenseMatrix> symmetric_eigensystem(const DenseMatrix& m);

EigenExtremes eig_extremes(const SymmetricMatrix& m);
EigenExtremes eig_extremes(const DenseMatrix& m);
double lambda_min(const DenseMatrix& m);
double lambda_max(const DenseMatrix& m);

/// Largest singular value, via the smaller of A^t A and A A^t.
double spectral_norm(const DenseMatrix& a);

/// sum_ij a_ij b_ij == tr(a^t b).
double frob_inner(const DenseMatrix& a, const DenseMatrix& b);

/// Elementwise max-norm |A|_inf; zero for empty matrices.
double max_abs(const DenseMatrix& a);
/// Elementwise l1 norm excluding the diagonal.
double l1_off_diagonal(const DenseMatrix& a);

/// Column-stacked lower triangle: (a00, a10, ..., a_{d-1,0}, a11, a21, ...).
Vector vech(const SymmetricMatrix& m);
Vector vech(const DenseMatrix& m);
SymmetricMatrix unvech(const Vector& v, Index dim);
/// Inverse of vech without the symmetry re-check (output is symmetric by construction).
DenseMatrix unvech_dense(const Vector& v, Index dim);
Index vech_length(Index dim);

/// Symmetric square root of an SPD/PSD matrix via its eigensystem.
DenseMatrix sym_sqrt(const DenseMatrix& m);

bool all_finite(const DenseMatrix& m);

}  // namespace gengm
