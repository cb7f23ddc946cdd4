#include "gengm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gengm {

namespace {

void require_square_finite(const DenseMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw InvalidInput(std::string(what) + ": matrix is not square (" +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
  if (!all_finite(m)) {
    throw InvalidInput(std::string(what) + ": matrix has non-finite entries");
  }
}

}  // namespace

bool all_finite(const DenseMatrix& m) { return m.allFinite(); }

SymmetricMatrix::SymmetricMatrix(const DenseMatrix& m) {
  require_square_finite(m, "SymmetricMatrix");
  const double scale = max_abs(m);
  const double tol = kSymmetryTolerance * scale;
  const Index d = m.rows();
  for (Index j = 0; j < d; ++j) {
    for (Index i = j + 1; i < d; ++i) {
      if (std::abs(m(i, j) - m(j, i)) > tol) {
        throw InvalidInput("SymmetricMatrix: asymmetry " +
                           std::to_string(std::abs(m(i, j) - m(j, i))) + " at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  m_ = 0.5 * (m + m.transpose());
}

SymmetricMatrix SymmetricMatrix::identity(Index dim) {
  return SymmetricMatrix(DenseMatrix::Identity(dim, dim));
}

SymmetricMatrix SymmetricMatrix::zero(Index dim) {
  return SymmetricMatrix(DenseMatrix::Zero(dim, dim));
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& d) {
  return SymmetricMatrix(DenseMatrix(d.asDiagonal()));
}

std::optional<Cholesky> Cholesky::factor(const DenseMatrix& a) {
  if (a.rows() != a.cols() || !all_finite(a)) return std::nullopt;
  const Index d = a.rows();
  if (d == 0) return Cholesky(DenseMatrix(0, 0));
  const double max_diag = a.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) return std::nullopt;
  const double pivot_tol = 1e-12 * static_cast<double>(d) * max_diag;

  DenseMatrix l = DenseMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    double diag = a(j, j);
    for (Index k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > pivot_tol)) return std::nullopt;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (Index i = j + 1; i < d; ++i) {
      double s = a(i, j);
      for (Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return Cholesky(std::move(l));
}

double Cholesky::log_det() const {
  double s = 0.0;
  for (Index i = 0; i < lower_.rows(); ++i) s += std::log(lower_(i, i));
  return 2.0 * s;
}

DenseMatrix Cholesky::solve(const DenseMatrix& b) const {
  if (b.rows() != lower_.rows()) {
    throw InvalidInput("Cholesky::solve: dimension mismatch");
  }
  const auto l = lower_.triangularView<Eigen::Lower>();
  DenseMatrix y = l.solve(b);
  return l.transpose().solve(y);
}

DenseMatrix Cholesky::inverse() const {
  DenseMatrix inv = solve(DenseMatrix::Identity(dim(), dim()));
  return 0.5 * (inv + inv.transpose());
}

Cholesky cholesky_or_throw(const DenseMatrix& a, const char* what) {
  auto c = Cholesky::factor(a);
  if (!c) throw NumericFailure(std::string(what) + ": matrix is not positive definite");
  return std::move(*c);
}

bool is_spd(const SymmetricMatrix& m) { return Cholesky::factor(m.matrix()).has_value(); }

bool is_spd(const DenseMatrix& m) {
  require_square_finite(m, "is_spd");
  return Cholesky::factor(m).has_value();
}

std::pair<Vector, DenseMatrix> symmetric_eigensystem(const DenseMatrix& m) {
  require_square_finite(m, "symmetric_eigensystem");
  const Index d = m.rows();
  DenseMatrix a = 0.5 * (m + m.transpose());
  DenseMatrix v = DenseMatrix::Identity(d, d);

  const double norm = a.norm();
  const double threshold = kJacobiTolerance * norm;
  auto off_norm = [&] {
    double s = 0.0;
    for (Index j = 0; j < d; ++j)
      for (Index i = j + 1; i < d; ++i) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = (norm == 0.0) || off_norm() <= threshold;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (Index p = 0; p < d - 1; ++p) {
      for (Index q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Index r = 0; r < d; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(p, r) = a(r, p);
          a(r, q) = s * arp + c * arq;
          a(q, r) = a(r, q);
        }
        for (Index r = 0; r < d; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
    converged = off_norm() <= threshold;
  }
  if (!converged) {
    throw NumericFailure("symmetric_eigensystem: Jacobi did not converge in " +
                         std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index i, Index j) { return a(i, i) > a(j, j); });
  Vector values(d);
  DenseMatrix vectors(d, d);
  for (Index k = 0; k < d; ++k) {
    values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return {values, vectors};
}

Vector symmetric_eigenvalues(const DenseMatrix& m) { return symmetric_eigensystem(m).first; }

EigenExtremes eig_extremes(const DenseMatrix& m) {
  require_square_finite(m, "eig_extremes");
  if (m.rows() == 0) throw InvalidInput("eig_extremes: empty matrix");
  if (m.rows() == 1) return {m(0, 0), m(0, 0)};
  const Vector ev = symmetric_eigenvalues(m);
  return {ev(ev.size() - 1), ev(0)};
}

EigenExtremes eig_extremes(const SymmetricMatrix& m) { return eig_extremes(m.matrix()); }

double lambda_min(const DenseMatrix& m) { return eig_extremes(m).lambda_min; }
double lambda_max(const DenseMatrix& m) { return eig_extremes(m).lambda_max; }

double spectral_norm(const DenseMatrix& a) {
  if (a.size() == 0) return 0.0;
  const DenseMatrix gram =
      a.rows() <= a.cols() ? DenseMatrix(a * a.transpose()) : DenseMatrix(a.transpose() * a);
  return std::sqrt(std::max(0.0, lambda_max(gram)));
}

double frob_inner(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput("frob_inner: dimension mismatch");
  }
  return a.cwiseProduct(b).sum();
}

double max_abs(const DenseMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double l1_off_diagonal(const DenseMatrix& a) {
  double s = a.cwiseAbs().sum();
  const Index d = std::min(a.rows(), a.cols());
  for (Index i = 0; i < d; ++i) s -= std::abs(a(i, i));
  return s;
}

Index vech_length(Index dim) { return dim * (dim + 1) / 2; }

Vector vech(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("vech: matrix is not square");
  const Index d = m.rows();
  Vector v(vech_length(d));
  Index k = 0;
  for (Index j = 0; j < d; ++j)
    for (Index i = j; i < d; ++i) v(k++) = m(i, j);
  return v;
}

Vector vech(const SymmetricMatrix& m) { return vech(m.matrix()); }

DenseMatrix unvech_dense(const Vector& v, Index dim) {
  if (dim < 0 || v.size() != vech_length(dim)) {
    throw InvalidInput("unvech: length " + std::to_string(v.size()) +
                       " does not match dim " + std::to_string(dim));
  }
  DenseMatrix m(dim, dim);
  Index k = 0;
  for (Index j = 0; j < dim; ++j) {
    for (Index i = j; i < dim; ++i) {
      m(i, j) = v(k);
      m(j, i) = v(k);
      ++k;
    }
  }
  return m;
}

SymmetricMatrix unvech(const Vector& v, Index dim) { return SymmetricMatrix(unvech_dense(v, dim)); }

DenseMatrix sym_sqrt(const DenseMatrix& m) {
  auto [values, vectors] = symmetric_eigensystem(m);
  Vector root = values.cwiseMax(0.0).cwiseSqrt();
  return vectors * root.asDiagonal() * vectors.transpose();
}

}  // namespace gengm
