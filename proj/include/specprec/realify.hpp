#pragma once

#include <complex>

#include "specprec/types.hpp"

namespace specprec {

// Maps between complex objects and their structured real counterparts: a
// complex scalar a+bi corresponds to the 2x2 rotation-scaling block
// [[a,-b],[b,a]], and a complex matrix maps blockwise to a real matrix of
// twice the size. The map preserves sums, products, inverses and conjugate
// transposes, which lets real linear algebra stand in for complex linear
// algebra wherever an independent cross-check is wanted.

template <class T>
Eigen::Matrix<T, 2, 2> realify(const std::complex<T>& z) {
  Eigen::Matrix<T, 2, 2> out;
  out << z.real(), -z.imag(), z.imag(), z.real();
  return out;
}

/// Blockwise realification: (m x n complex) -> (2m x 2n real).
template <class Derived>
Matrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real> realify(
    const Eigen::MatrixBase<Derived>& Z) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Matrix<Real> out(2 * Z.rows(), 2 * Z.cols());
  for (Eigen::Index j = 0; j < Z.cols(); ++j) {
    for (Eigen::Index i = 0; i < Z.rows(); ++i) {
      const std::complex<Real> z = Z(i, j);
      out(2 * i, 2 * j) = z.real();
      out(2 * i, 2 * j + 1) = -z.imag();
      out(2 * i + 1, 2 * j) = z.imag();
      out(2 * i + 1, 2 * j + 1) = z.real();
    }
  }
  return out;
}

/// Inverse of realify: reads the (re, im) pair of each 2x2 block.
CMatrix complexify(const RMatrix& M);

/// Largest deviation of M from the realified block structure.
double realified_structure_error(const RMatrix& M);

/// Index permutation of size 2k sending interleaved (re, im) pair layout to
/// the stacked [all re; all im] layout: stacked[r] = interleaved[perm[r]].
Eigen::VectorXi pair_to_stacked_permutation(Eigen::Index k);

/// [Re(z); Im(z)] for a complex column vector.
template <class Derived>
Vector<typename Eigen::NumTraits<typename Derived::Scalar>::Real> stacked_vector(
    const Eigen::MatrixBase<Derived>& z) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Vector<Real> out(2 * z.size());
  out.head(z.size()) = z.real();
  out.tail(z.size()) = z.imag();
  return out;
}

/// [[Re Z, -Im Z], [Im Z, Re Z]] block form of a complex matrix.
template <class Derived>
Matrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real> stacked_matrix(
    const Eigen::MatrixBase<Derived>& Z) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Matrix<Real> out(2 * Z.rows(), 2 * Z.cols());
  out.topLeftCorner(Z.rows(), Z.cols()) = Z.real();
  out.topRightCorner(Z.rows(), Z.cols()) = -Z.imag();
  out.bottomLeftCorner(Z.rows(), Z.cols()) = Z.imag();
  out.bottomRightCorner(Z.rows(), Z.cols()) = Z.real();
  return out;
}

struct GroupLassoResult {
  CVector beta;
  int iterations = 0;
  bool converged = false;
};

/// Reference solver for the complex lasso, run entirely in the realified
/// space: minimizes (1/2n)||y~ - sum_j X~~_j b~_j||^2 + lambda sum_j ||b~_j||
/// by cyclic block coordinate descent over real 2-vectors, then reassembles
/// complex coefficients. Columns of X must be scaled to ||X_j|| = sqrt(n).
/// Slow but independent of the complex solver; used as ground truth.
GroupLassoResult realified_group_lasso(const CMatrix& X, const CVector& y, double lambda,
                                       double tol = 1e-10, int max_sweeps = 200000);

}  // namespace specprec
