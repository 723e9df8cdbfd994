#include "specprec/realify.hpp"

#include <cmath>
#include <stdexcept>

namespace specprec {

CMatrix complexify(const RMatrix& M) {
  if (M.rows() % 2 != 0 || M.cols() % 2 != 0) {
    throw std::invalid_argument("complexify: dimensions must be even");
  }
  CMatrix out(M.rows() / 2, M.cols() / 2);
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      out(i, j) = Complex(M(2 * i, 2 * j), M(2 * i + 1, 2 * j));
    }
  }
  return out;
}

double realified_structure_error(const RMatrix& M) {
  if (M.rows() % 2 != 0 || M.cols() % 2 != 0) {
    throw std::invalid_argument("realified_structure_error: dimensions must be even");
  }
  double err = 0.0;
  for (Eigen::Index j = 0; j < M.cols() / 2; ++j) {
    for (Eigen::Index i = 0; i < M.rows() / 2; ++i) {
      err = std::max(err, std::abs(M(2 * i, 2 * j) - M(2 * i + 1, 2 * j + 1)));
      err = std::max(err, std::abs(M(2 * i, 2 * j + 1) + M(2 * i + 1, 2 * j)));
    }
  }
  return err;
}

Eigen::VectorXi pair_to_stacked_permutation(Eigen::Index k) {
  if (k < 1) throw std::invalid_argument("pair_to_stacked_permutation: k must be >= 1");
  Eigen::VectorXi perm(2 * k);
  for (Eigen::Index r = 0; r < k; ++r) {
    perm(r) = static_cast<int>(2 * r);
    perm(k + r) = static_cast<int>(2 * r + 1);
  }
  return perm;
}

GroupLassoResult realified_group_lasso(const CMatrix& X, const CVector& y, double lambda,
                                       double tol, int max_sweeps) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (y.size() != n) throw std::invalid_argument("realified_group_lasso: size mismatch");
  if (lambda < 0) throw std::invalid_argument("realified_group_lasso: lambda must be >= 0");
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < p; ++j) {
    if (std::abs(X.col(j).norm() / sqrt_n - 1.0) > 1e-8) {
      throw std::invalid_argument("realified_group_lasso: columns must satisfy ||X_j|| = sqrt(n)");
    }
  }

  // All arithmetic below is real: the problem is a group lasso over p
  // orthogonal 2-column blocks of the stacked design.
  const RMatrix Xr = stacked_matrix(X);  // 2n x 2p, block j = columns (j, p+j)
  const RVector yr = stacked_vector(y);

  RMatrix coef = RMatrix::Zero(2, p);  // column j = (Re b_j, Im b_j)
  RVector resid = yr;
  const double inv_n = 1.0 / static_cast<double>(n);

  bool converged = false;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const auto c1 = Xr.col(j);
      const auto c2 = Xr.col(p + j);
      const Eigen::Vector2d old = coef.col(j);
      // u = X~~_j^T r^(j) / n with r^(j) = resid + X~~_j b_j; the block Gram
      // is ||X_j||^2 I_2 = n I_2, so the correction is just b_j itself.
      Eigen::Vector2d u(c1.dot(resid) * inv_n + old(0), c2.dot(resid) * inv_n + old(1));
      const double norm_u = u.norm();
      Eigen::Vector2d fresh = Eigen::Vector2d::Zero();
      if (norm_u > lambda) fresh = (1.0 - lambda / norm_u) * u;
      const Eigen::Vector2d delta = fresh - old;
      if (delta != Eigen::Vector2d::Zero()) {
        resid -= c1 * delta(0) + c2 * delta(1);
        coef.col(j) = fresh;
        max_change = std::max(max_change, delta.norm());
      }
    }
    if (max_change <= tol) {
      converged = true;
      ++sweep;
      break;
    }
  }

  GroupLassoResult result;
  result.beta = CVector(p);
  for (Eigen::Index j = 0; j < p; ++j) result.beta(j) = Complex(coef(0, j), coef(1, j));
  result.iterations = sweep;
  result.converged = converged;
  return result;
}

}  // namespace specprec
