#pragma once

#include <vector>

#include "specprec/types.hpp"

namespace specprec {

// Coordinate-descent solvers for the lasso with complex variables. The
// penalty |b| couples the real and imaginary parts, so each coordinate update
// is the complex soft threshold below; with columns scaled to ||X_j|| =
// sqrt(n) the update has closed form and the sweep is as cheap as in the real
// case.

/// (|z| - lambda)_+ * z/|z|, with soft_threshold(0, .) = 0.
Complex soft_threshold(Complex z, double lambda);

struct LassoOptions {
  double tol = 1e-7;        // max coordinate modulus change per sweep
  int max_sweeps = 10000;
  bool use_active_set = true;
};

/// Minimizes (1/2n)||y - X b||^2 + lambda ||b||_1 by cyclic coordinate
/// descent with residual updates. Columns of X must be pre-scaled to
/// ||X_j|| = sqrt(n) (verified). Non-convergence is reported through the
/// returned flag, not an exception.
LassoSolution classo(const CMatrix& X, const CVector& y, double lambda,
                     const CVector& beta0, const LassoOptions& opts = {});
LassoSolution classo(const CMatrix& X, const CVector& y, double lambda,
                     const LassoOptions& opts = {});

/// Covariance-update form: minimizes
///   (1/2) b^+ S b - Re(s^+ b) + lambda ||b||_1
/// given S = X^+ X / n and s = X^+ y / n (or any Hermitian PSD S with
/// positive diagonal). Coordinate updates divide by the diagonal entry, so S
/// need not have unit diagonal.
LassoSolution classo_cov(const CMatrix& S, const CVector& s, double lambda,
                         const CVector& beta0, const LassoOptions& opts = {});

/// Smallest lambda with an all-zero solution: max_j |X_j^+ y| / n.
double classo_lambda_max(const CMatrix& X, const CVector& y);

/// Log-linear grid of `count` values from lambda_max down across `decades`
/// decades, descending.
std::vector<double> lambda_grid(double lambda_max, int count = 50, double decades = 3.0);

/// Pathwise fit over a strictly decreasing lambda grid, warm-starting each
/// solve from the previous solution.
LassoPath classo_path(const CMatrix& X, const CVector& y, const std::vector<double>& lambdas,
                      const LassoOptions& opts = {});

/// Max KKT violation of the classo stationarity system at beta:
/// |X_j^+ r / n| <= lambda on zero coordinates and X_j^+ r / n =
/// lambda * b_j/|b_j| on the rest.
double classo_kkt_residual(const CMatrix& X, const CVector& y, double lambda,
                           const CVector& beta);

/// Same certificate for the covariance form, in terms of s - S b.
double classo_cov_kkt_residual(const CMatrix& S, const CVector& s, double lambda,
                               const CVector& beta);

}  // namespace specprec
