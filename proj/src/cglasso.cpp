#include "specprec/cglasso.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace specprec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_input_matrix(const CMatrix& P, const char* who) {
  const Eigen::Index p = P.rows();
  if (P.cols() != p || p < 1) {
    throw std::invalid_argument(std::string(who) + ": input must be square and nonempty");
  }
  const double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
  if ((P - P.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw std::invalid_argument(std::string(who) + ": input must be Hermitian");
  }
  for (Eigen::Index k = 0; k < p; ++k) {
    if (!(P(k, k).real() > 0.0)) {
      throw std::invalid_argument(std::string(who) + ": diagonal must be strictly positive");
    }
  }
}

std::vector<int> complement_indices(Eigen::Index p, Eigen::Index k) {
  std::vector<int> idx;
  idx.reserve(p - 1);
  for (Eigen::Index i = 0; i < p; ++i) {
    if (i != k) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

/// Solver state shared across lambdas on a path (the "warmer" start).
struct GlassoState {
  CMatrix W;  // working covariance, diag(W) = diag(P) throughout
  CMatrix B;  // (p-1) x p coefficients, stored in the inner-problem scale
};

struct SweepResult {
  bool converged = false;
  int sweeps = 0;
  int inner_failures = 0;
};

/// Block sweeps of the working covariance until the change between full
/// sweeps drops below tol. `scale_inner` switches on the inner rescaling by
/// diag(P).
SweepResult run_sweeps(const CMatrix& P, double lambda, bool scale_inner, GlassoState& st,
                       const GlassoOptions& opts) {
  const Eigen::Index p = P.rows();
  SweepResult out;
  RVector inv_sqrt_d(p);
  for (Eigen::Index k = 0; k < p; ++k) inv_sqrt_d(k) = 1.0 / std::sqrt(P(k, k).real());

  while (out.sweeps < opts.max_outer_sweeps) {
    const CMatrix W_prev = st.W;
    for (Eigen::Index k = 0; k < p; ++k) {
      const std::vector<int> idx = complement_indices(p, k);
      CMatrix W11 = st.W(idx, idx);
      CVector p12 = P(idx, k);
      CVector beta;
      if (scale_inner) {
        RVector sc(p - 1);
        for (Eigen::Index i = 0; i + 1 < p; ++i) sc(i) = inv_sqrt_d(idx[i]);
        const CMatrix W11s = sc.asDiagonal() * W11 * sc.asDiagonal();
        const CVector p12s = sc.asDiagonal() * p12;
        LassoSolution sol = classo_cov(W11s, p12s, lambda, st.B.col(k), opts.inner);
        if (!sol.converged) ++out.inner_failures;
        st.B.col(k) = sol.beta;
        beta = sc.asDiagonal() * sol.beta;
      } else {
        LassoSolution sol = classo_cov(W11, p12, lambda, st.B.col(k), opts.inner);
        if (!sol.converged) ++out.inner_failures;
        st.B.col(k) = sol.beta;
        beta = std::move(sol.beta);
      }
      const CVector w12 = W11 * beta;
      st.W(idx, k) = w12;
      st.W(k, idx) = w12.adjoint();
    }
    ++out.sweeps;
    if ((st.W - W_prev).cwiseAbs().maxCoeff() <= opts.outer_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

/// Precision recovery from the final (W, B) state. Returns false if a Schur
/// complement came out non-positive.
bool recover_theta(const CMatrix& P, bool scale_inner, const GlassoState& st, CMatrix& theta) {
  const Eigen::Index p = P.rows();
  theta.resize(p, p);
  bool healthy = true;
  for (Eigen::Index k = 0; k < p; ++k) {
    const std::vector<int> idx = complement_indices(p, k);
    CVector beta = st.B.col(k);
    if (scale_inner) {
      for (Eigen::Index i = 0; i + 1 < p; ++i) beta(i) /= std::sqrt(P(idx[i], idx[i]).real());
    }
    const CVector w12 = st.W(idx, k);
    const double denom = st.W(k, k).real() - w12.dot(beta).real();
    if (!(denom > 0.0) || !std::isfinite(denom)) healthy = false;
    const double theta_kk = 1.0 / denom;
    theta(k, k) = theta_kk;
    theta(idx, k) = -beta * theta_kk;
  }
  theta = ((theta + theta.adjoint()) / 2.0).eval();
  return healthy && theta.allFinite();
}

/// Final-state certificate for the inner-scaled variant: the largest KKT
/// violation of any column's scaled lasso problem.
double inner_scaled_certificate(const CMatrix& P, double lambda, const GlassoState& st) {
  const Eigen::Index p = P.rows();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < p; ++k) {
    const std::vector<int> idx = complement_indices(p, k);
    RVector sc(p - 1);
    for (Eigen::Index i = 0; i + 1 < p; ++i) {
      sc(i) = 1.0 / std::sqrt(P(idx[i], idx[i]).real());
    }
    const CMatrix W11s = sc.asDiagonal() * st.W(idx, idx) * sc.asDiagonal();
    const CVector p12s = sc.asDiagonal() * P(idx, k);
    worst = std::max(worst, classo_cov_kkt_residual(W11s, p12s, lambda, st.B.col(k)));
  }
  return worst;
}

PrecisionEstimate solve_single(const CMatrix& P, double lambda, bool scale_inner,
                               const CMatrix& B0, const GlassoOptions& opts) {
  const Eigen::Index p = P.rows();
  PrecisionEstimate est;
  est.lambda = lambda;
  if (p == 1) {
    est.theta = CMatrix::Constant(1, 1, Complex(1.0 / P(0, 0).real(), 0.0));
    est.kkt_residual = 0.0;
    est.converged = true;
    return est;
  }
  GlassoState st{P, B0};
  const SweepResult sr = run_sweeps(P, lambda, scale_inner, st, opts);
  const bool healthy = recover_theta(P, scale_inner, st, est.theta);
  est.converged = sr.converged && sr.inner_failures == 0 && healthy;
  if (healthy) {
    est.kkt_residual = scale_inner ? inner_scaled_certificate(P, lambda, st)
                                   : kkt_residual(P, est.theta, lambda);
  } else {
    est.kkt_residual = kInf;
  }
  return est;
}

double coherence_lambda_max(const CMatrix& fhat) {
  const Eigen::Index p = fhat.rows();
  double lmax = 0.0;
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      if (k == l) continue;
      lmax = std::max(lmax, std::abs(fhat(k, l)) /
                                std::sqrt(fhat(k, k).real() * fhat(l, l).real()));
    }
  }
  return lmax;
}

double frobenius_relative_error(const CMatrix& est, const CMatrix& truth) {
  return (est - truth).squaredNorm() / truth.squaredNorm();
}

}  // namespace

PrecisionEstimate cglasso(const CMatrix& P, double lambda, const CMatrix& B0,
                          const GlassoOptions& opts) {
  validate_input_matrix(P, "cglasso");
  if (lambda < 0) throw std::invalid_argument("cglasso: lambda must be >= 0");
  if (B0.rows() != P.rows() - 1 || B0.cols() != P.rows()) {
    throw std::invalid_argument("cglasso: B0 must be (p-1) x p");
  }
  return solve_single(P, lambda, /*scale_inner=*/false, B0, opts);
}

PrecisionEstimate cglasso(const CMatrix& P, double lambda, const GlassoOptions& opts) {
  validate_input_matrix(P, "cglasso");
  return cglasso(P, lambda, CMatrix::Zero(P.rows() - 1 < 0 ? 0 : P.rows() - 1, P.rows()), opts);
}

PrecisionEstimate cglasso_coherence_scaled(const CMatrix& fhat, double lambda,
                                           const GlassoOptions& opts) {
  validate_input_matrix(fhat, "cglasso_coherence_scaled");
  const Eigen::Index p = fhat.rows();
  RVector inv_sqrt_d(p);
  for (Eigen::Index k = 0; k < p; ++k) inv_sqrt_d(k) = 1.0 / std::sqrt(fhat(k, k).real());
  const CMatrix R = inv_sqrt_d.asDiagonal() * fhat * inv_sqrt_d.asDiagonal();
  PrecisionEstimate est = cglasso(((R + R.adjoint()) / 2.0).eval(), lambda, opts);
  est.theta = (inv_sqrt_d.asDiagonal() * est.theta * inv_sqrt_d.asDiagonal()).eval();
  return est;
}

PrecisionEstimate cglasso_inner_scaled(const CMatrix& fhat, double lambda,
                                       const GlassoOptions& opts) {
  validate_input_matrix(fhat, "cglasso_inner_scaled");
  if (lambda < 0) throw std::invalid_argument("cglasso_inner_scaled: lambda must be >= 0");
  const Eigen::Index p = fhat.rows();
  return solve_single(fhat, lambda, /*scale_inner=*/true,
                      CMatrix::Zero(p - 1 < 0 ? 0 : p - 1, p), opts);
}

double cglasso_lambda_max(const CMatrix& fhat, Scaling scaling) {
  validate_input_matrix(fhat, "cglasso_lambda_max");
  const Eigen::Index p = fhat.rows();
  if (p == 1) return 0.0;
  double lmax = 0.0;
  switch (scaling) {
    case Scaling::none:
      for (Eigen::Index k = 0; k < p; ++k) {
        for (Eigen::Index l = 0; l < p; ++l) {
          if (k != l) lmax = std::max(lmax, std::abs(fhat(k, l)));
        }
      }
      break;
    case Scaling::input:
      lmax = coherence_lambda_max(fhat);
      break;
    case Scaling::inner:
      // Column k's inner problem sees p_jk / sqrt(d_j); the all-zero solution
      // needs lambda to dominate every such entry.
      for (Eigen::Index k = 0; k < p; ++k) {
        for (Eigen::Index j = 0; j < p; ++j) {
          if (j != k) {
            lmax = std::max(lmax, std::abs(fhat(j, k)) / std::sqrt(fhat(j, j).real()));
          }
        }
      }
      break;
  }
  return lmax;
}

double kkt_residual(const CMatrix& P, const CMatrix& theta, double lambda, double zero_tol) {
  return kkt_residual_weighted(P, theta, lambda,
                               RMatrix::Ones(theta.rows(), theta.cols()), zero_tol);
}

double kkt_residual_weighted(const CMatrix& P, const CMatrix& theta, double lambda,
                             const RMatrix& weights, double zero_tol) {
  const Eigen::Index p = theta.rows();
  if (P.rows() != p || P.cols() != p || theta.cols() != p) {
    throw std::invalid_argument("kkt_residual: size mismatch");
  }
  Eigen::LLT<CMatrix> llt(theta);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("kkt_residual: theta must be positive definite");
  }
  const CMatrix theta_inv = llt.solve(CMatrix::Identity(p, p));
  double viol = 0.0;
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      const Complex r = P(k, l) - theta_inv(k, l);
      if (k == l) {
        viol = std::max(viol, std::abs(r));
      } else if (std::abs(theta(k, l)) > zero_tol) {
        viol = std::max(
            viol, std::abs(r + lambda * weights(k, l) * theta(k, l) / std::abs(theta(k, l))));
      } else {
        viol = std::max(viol, std::abs(r) - lambda * weights(k, l));
      }
    }
  }
  return std::max(viol, 0.0);
}

double cglasso_objective(const CMatrix& P, const CMatrix& theta, double lambda) {
  Eigen::LLT<CMatrix> llt(theta);
  if (llt.info() != Eigen::Success) return kInf;
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < theta.rows(); ++k) {
    logdet += 2.0 * std::log(llt.matrixLLT()(k, k).real());
  }
  const double tr = P.cwiseProduct(theta.transpose()).sum().real();
  double penalty = 0.0;
  for (Eigen::Index k = 0; k < theta.rows(); ++k) {
    for (Eigen::Index l = 0; l < theta.cols(); ++l) {
      if (k != l) penalty += std::abs(theta(k, l));
    }
  }
  return tr - logdet + lambda * penalty;
}

double ebic(const CMatrix& theta, const CMatrix& fhat, int n_eff, int n_raw, double gamma,
            double zero_tol) {
  const Eigen::Index p = theta.rows();
  if (fhat.rows() != p || fhat.cols() != p || theta.cols() != p) {
    throw std::invalid_argument("ebic: size mismatch");
  }
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("ebic: gamma must be in [0,1]");
  if (n_eff < 1 || n_raw < 1) throw std::invalid_argument("ebic: sample sizes must be >= 1");
  Eigen::LLT<CMatrix> llt(theta);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("ebic: theta must be positive definite");
  }
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < p; ++k) logdet += 2.0 * std::log(llt.matrixLLT()(k, k).real());
  const double tr = fhat.cwiseProduct(theta.transpose()).sum().real();
  int edges = 0;
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = k + 1; l < p; ++l) {
      if (std::abs(theta(k, l)) > zero_tol) ++edges;
    }
  }
  const double loglik = static_cast<double>(n_eff) * (logdet - tr);
  return -2.0 * loglik + edges * std::log(static_cast<double>(n_raw)) +
         4.0 * gamma * edges * std::log(static_cast<double>(p));
}

CMatrix partial_coherence(const CMatrix& theta) {
  const Eigen::Index p = theta.rows();
  if (theta.cols() != p) throw std::invalid_argument("partial_coherence: input must be square");
  for (Eigen::Index k = 0; k < p; ++k) {
    if (!(theta(k, k).real() > 0.0)) {
      throw std::invalid_argument("partial_coherence: diagonal must be strictly positive");
    }
  }
  CMatrix out(p, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      if (k == l) {
        out(k, l) = 1.0;
      } else {
        out(k, l) = -theta(k, l) / std::sqrt(theta(k, k).real() * theta(l, l).real());
      }
    }
  }
  return out;
}

PrecisionPath cglasso_path(const CMatrix& fhat, const std::vector<double>& lambdas,
                           Scaling scaling, const EbicParams& ebic_params, const CMatrix* truth,
                           const PathOptions& opts) {
  validate_input_matrix(fhat, "cglasso_path");
  if (lambdas.empty()) throw std::invalid_argument("cglasso_path: empty lambda grid");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] < lambdas[i - 1])) {
      throw std::invalid_argument("cglasso_path: lambdas must be strictly decreasing");
    }
  }

  const Eigen::Index p = fhat.rows();
  RVector inv_sqrt_d(p);
  for (Eigen::Index k = 0; k < p; ++k) inv_sqrt_d(k) = 1.0 / std::sqrt(fhat(k, k).real());

  CMatrix P = fhat;
  if (scaling == Scaling::input) {
    P = inv_sqrt_d.asDiagonal() * fhat * inv_sqrt_d.asDiagonal();
    P = ((P + P.adjoint()) / 2.0).eval();
  }
  const bool scale_inner = scaling == Scaling::inner;

  PrecisionPath path;
  path.lambdas = lambdas;
  path.estimates.reserve(lambdas.size());
  path.ebic.reserve(lambdas.size());

  GlassoState st{P, CMatrix::Zero(p - 1 < 0 ? 0 : p - 1, p)};
  double best_ebic = kInf;
  double rmse_first = kNaN;
  double rmse_min = kInf;
  std::size_t rmse_min_step = 0;

  for (std::size_t step = 0; step < lambdas.size(); ++step) {
    const double lambda = lambdas[step];
    PrecisionEstimate est;
    est.lambda = lambda;
    if (p == 1) {
      est.theta = CMatrix::Constant(1, 1, Complex(1.0 / P(0, 0).real(), 0.0));
      est.kkt_residual = 0.0;
      est.converged = true;
    } else {
      const SweepResult sr = run_sweeps(P, lambda, scale_inner, st, opts.glasso);
      const bool healthy = recover_theta(P, scale_inner, st, est.theta);
      est.converged = sr.converged && sr.inner_failures == 0 && healthy;
      if (healthy) {
        est.kkt_residual = scale_inner ? inner_scaled_certificate(P, lambda, st)
                                       : kkt_residual(P, est.theta, lambda);
      } else {
        est.kkt_residual = kInf;
      }
    }
    if (scaling == Scaling::input && est.theta.size() > 0 && est.theta.allFinite()) {
      est.theta = (inv_sqrt_d.asDiagonal() * est.theta * inv_sqrt_d.asDiagonal()).eval();
    }

    double crit = kNaN;
    if (est.converged) {
      Eigen::LLT<CMatrix> llt(est.theta);
      if (llt.info() == Eigen::Success) {
        crit = ebic(est.theta, fhat, ebic_params.n_eff, ebic_params.n_raw, ebic_params.gamma);
      }
    }
    if (std::isfinite(crit) && crit < best_ebic) {
      best_ebic = crit;
      path.selected_index = step;
      path.has_selection = true;
    }
    path.ebic.push_back(crit);

    double err = kNaN;
    if (truth != nullptr && est.theta.allFinite()) {
      err = frobenius_relative_error(est.theta, *truth);
    }
    path.estimates.push_back(std::move(est));

    if (truth != nullptr && std::isfinite(err)) {
      if (step == 0) rmse_first = err;
      if (err < rmse_min) {
        rmse_min = err;
        rmse_min_step = step;
      }
      const bool past_minimum = step > rmse_min_step;
      const bool far_from_start = static_cast<int>(step) >= opts.stopping_min_steps;
      if (past_minimum && far_from_start &&
          err - rmse_min > opts.stopping_factor * (rmse_first - rmse_min)) {
        path.lambdas.resize(step + 1);
        break;
      }
    }
  }
  return path;
}

}  // namespace specprec
