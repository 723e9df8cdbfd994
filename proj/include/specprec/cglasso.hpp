#pragma once

#include <vector>

#include "specprec/classo.hpp"
#include "specprec/types.hpp"

namespace specprec {

// Graphical lasso over Hermitian matrices: minimizes
//   tr(P Theta) - log det Theta + lambda * sum_{k != l} |Theta_kl|
// by block coordinate descent over rows/columns of the working covariance W,
// with each block solved by classo_cov. The diagonal of W equals the
// diagonal of P throughout.

/// How the input is standardized before/while solving.
///   none  - solve on P as given.
///   input - solve on the coherence matrix D^{-1/2} P D^{-1/2} and map the
///           solution back with D^{-1/2} (.) D^{-1/2}; equivalent to a
///           penalty weighted by sqrt(d_k d_l) on entry (k,l).
///   inner - keep P but feed each inner regression the rescaled blocks
///           D11^{-1/2} W11 D11^{-1/2} and D11^{-1/2} p12.
enum class Scaling { none, input, inner };

struct GlassoOptions {
  double outer_tol = 1e-6;  // max modulus change of W between full sweeps
  int max_outer_sweeps = 1000;
  LassoOptions inner{.tol = 1e-8, .max_sweeps = 10000, .use_active_set = true};
};

/// One solve at fixed lambda, starting from W = P and coefficients B0
/// ((p-1) x p). Non-convergence is reported via the flag.
PrecisionEstimate cglasso(const CMatrix& P, double lambda, const CMatrix& B0,
                          const GlassoOptions& opts = {});
PrecisionEstimate cglasso(const CMatrix& P, double lambda, const GlassoOptions& opts = {});

/// Input-scaled variant: solve on the coherence matrix, rescale the output.
PrecisionEstimate cglasso_coherence_scaled(const CMatrix& fhat, double lambda,
                                           const GlassoOptions& opts = {});

/// Inner-scaled variant: rescale each inner regression by diag(P). With
/// unequal diagonal entries the column problems imply conflicting penalty
/// weights across the Hermitian pair (j,k), so there is no single convex
/// program behind the iteration; convergence is measured at full-sweep
/// boundaries and kkt_residual reports the worst per-column scaled-lasso
/// violation in the final state (zero only when the diagonal is constant).
PrecisionEstimate cglasso_inner_scaled(const CMatrix& fhat, double lambda,
                                       const GlassoOptions& opts = {});

/// Smallest lambda whose solution is diagonal, for the given scaling.
double cglasso_lambda_max(const CMatrix& fhat, Scaling scaling = Scaling::none);

/// Max violation of the stationarity system P - Theta^{-1} + lambda*Psi = 0,
/// where Psi holds unit-modulus phases on nonzero off-diagonals, anything of
/// modulus <= 1 on zero ones, and 0 on the diagonal. Throws if theta is not
/// positive definite.
double kkt_residual(const CMatrix& P, const CMatrix& theta, double lambda,
                    double zero_tol = 1e-8);

/// Same with a per-entry penalty weight matrix (off-diagonal entries used).
double kkt_residual_weighted(const CMatrix& P, const CMatrix& theta, double lambda,
                             const RMatrix& weights, double zero_tol = 1e-8);

/// tr(P Theta) - log det Theta + lambda ||Theta||_{1,off}; +inf if Theta is
/// not positive definite.
double cglasso_objective(const CMatrix& P, const CMatrix& theta, double lambda);

/// Extended BIC: -2 l(Theta) + |E| log(n_raw) + 4 gamma |E| log(p) with
/// l(Theta) = n_eff (log det Theta - tr(fhat Theta)) and |E| the number of
/// off-diagonal nonzero pairs (k < l).
double ebic(const CMatrix& theta, const CMatrix& fhat, int n_eff, int n_raw,
            double gamma = 0.0, double zero_tol = 1e-8);

/// Standardized precision: 1 on the diagonal, -theta_kl / sqrt(theta_kk
/// theta_ll) off it.
CMatrix partial_coherence(const CMatrix& theta);

struct EbicParams {
  int n_eff = 1;   // effective sample size 2m+1 entering the likelihood
  int n_raw = 1;   // raw series length entering the log(n) penalty
  double gamma = 0.0;
};

struct PathOptions {
  GlassoOptions glasso;
  // Stopping rule used when the truth is supplied: abandon the path once
  // rmse(lambda) - rmse_min > factor * (rmse(lambda_0) - rmse_min), provided
  // the minimum lies strictly behind and at least min_steps have been taken.
  double stopping_factor = 0.5;
  int stopping_min_steps = 5;
};

/// Pathwise fit over a strictly decreasing lambda grid with two-fold warm
/// starts: both the working covariance and the coefficient matrix carry over
/// between lambdas. Computes EBIC per estimate and marks the minimizer among
/// converged ones. If `truth` is given, records relative errors and applies
/// the stopping rule above.
PrecisionPath cglasso_path(const CMatrix& fhat, const std::vector<double>& lambdas,
                           Scaling scaling, const EbicParams& ebic_params,
                           const CMatrix* truth = nullptr, const PathOptions& opts = {});

}  // namespace specprec
