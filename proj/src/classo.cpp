#include "specprec/classo.hpp"

#include <cmath>
#include <stdexcept>

namespace specprec {

namespace {

void check_scaled_columns(const CMatrix& X) {
  const double sqrt_n = std::sqrt(static_cast<double>(X.rows()));
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    if (std::abs(X.col(j).norm() / sqrt_n - 1.0) > 1e-8) {
      throw std::invalid_argument("classo: columns must satisfy ||X_j|| = sqrt(n)");
    }
  }
}

double weighted_l1(const CVector& beta) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) s += std::abs(beta(j));
  return s;
}

}  // namespace

Complex soft_threshold(Complex z, double lambda) {
  const double mod = std::abs(z);
  if (mod <= lambda) return Complex(0.0, 0.0);
  return z * ((mod - lambda) / mod);
}

LassoSolution classo(const CMatrix& X, const CVector& y, double lambda,
                     const CVector& beta0, const LassoOptions& opts) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (y.size() != n || beta0.size() != p) {
    throw std::invalid_argument("classo: size mismatch");
  }
  if (lambda < 0) throw std::invalid_argument("classo: lambda must be >= 0");
  check_scaled_columns(X);

  CVector beta = beta0;
  CVector r = y - X * beta;
  const double inv_n = 1.0 / static_cast<double>(n);

  // One pass over `idx`; returns the max coordinate modulus change.
  const auto sweep = [&](const std::vector<Eigen::Index>& idx) {
    double max_change = 0.0;
    for (const Eigen::Index j : idx) {
      const Complex old = beta(j);
      const Complex u = X.col(j).dot(r) * inv_n + old;  // X_j^+ r^(j) / n
      const Complex fresh = soft_threshold(u, lambda);
      if (fresh != old) {
        r.noalias() -= X.col(j) * (fresh - old);
        beta(j) = fresh;
        max_change = std::max(max_change, std::abs(fresh - old));
      }
    }
    return max_change;
  };

  std::vector<Eigen::Index> all(p);
  for (Eigen::Index j = 0; j < p; ++j) all[j] = j;

  LassoSolution sol;
  int sweeps = 0;
  while (sweeps < opts.max_sweeps) {
    const double change = sweep(all);
    ++sweeps;
    if (change <= opts.tol) {
      sol.converged = true;
      break;
    }
    if (opts.use_active_set) {
      std::vector<Eigen::Index> active;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (beta(j) != Complex(0.0, 0.0)) active.push_back(j);
      }
      while (sweeps < opts.max_sweeps) {
        const double inner_change = sweep(active);
        ++sweeps;
        if (inner_change <= opts.tol) break;
      }
    }
  }

  sol.beta = std::move(beta);
  sol.lambda = lambda;
  sol.iterations = sweeps;
  sol.objective = 0.5 * inv_n * r.squaredNorm() + lambda * weighted_l1(sol.beta);
  return sol;
}

LassoSolution classo(const CMatrix& X, const CVector& y, double lambda,
                     const LassoOptions& opts) {
  return classo(X, y, lambda, CVector::Zero(X.cols()), opts);
}

LassoSolution classo_cov(const CMatrix& S, const CVector& s, double lambda,
                         const CVector& beta0, const LassoOptions& opts) {
  const Eigen::Index p = S.rows();
  if (S.cols() != p || s.size() != p || beta0.size() != p) {
    throw std::invalid_argument("classo_cov: size mismatch");
  }
  if (lambda < 0) throw std::invalid_argument("classo_cov: lambda must be >= 0");
  RVector diag(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    diag(j) = S(j, j).real();
    if (!(diag(j) > 0.0)) {
      throw std::invalid_argument("classo_cov: diagonal of S must be real positive");
    }
  }

  CVector beta = beta0;
  CVector grad = s - S * beta;  // s_Xr in the covariance updates

  const auto sweep = [&](const std::vector<Eigen::Index>& idx) {
    double max_change = 0.0;
    for (const Eigen::Index j : idx) {
      const Complex old = beta(j);
      const Complex v_j = grad(j) + S(j, j) * old;
      const Complex fresh = soft_threshold(v_j, lambda) / diag(j);
      if (fresh != old) {
        grad.noalias() -= S.col(j) * (fresh - old);
        beta(j) = fresh;
        max_change = std::max(max_change, std::abs(fresh - old));
      }
    }
    return max_change;
  };

  std::vector<Eigen::Index> all(p);
  for (Eigen::Index j = 0; j < p; ++j) all[j] = j;

  LassoSolution sol;
  int sweeps = 0;
  while (sweeps < opts.max_sweeps) {
    const double change = sweep(all);
    ++sweeps;
    if (change <= opts.tol) {
      sol.converged = true;
      break;
    }
    if (opts.use_active_set) {
      std::vector<Eigen::Index> active;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (beta(j) != Complex(0.0, 0.0)) active.push_back(j);
      }
      while (sweeps < opts.max_sweeps) {
        const double inner_change = sweep(active);
        ++sweeps;
        if (inner_change <= opts.tol) break;
      }
    }
  }

  sol.beta = std::move(beta);
  sol.lambda = lambda;
  sol.iterations = sweeps;
  sol.objective = 0.5 * (sol.beta.adjoint() * S * sol.beta)(0).real() -
                  s.dot(sol.beta).real() + lambda * weighted_l1(sol.beta);
  return sol;
}

double classo_lambda_max(const CMatrix& X, const CVector& y) {
  const double inv_n = 1.0 / static_cast<double>(X.rows());
  double lmax = 0.0;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    lmax = std::max(lmax, std::abs(X.col(j).dot(y)) * inv_n);
  }
  return lmax;
}

std::vector<double> lambda_grid(double lambda_max, int count, double decades) {
  if (lambda_max <= 0) throw std::invalid_argument("lambda_grid: lambda_max must be > 0");
  if (count < 1) throw std::invalid_argument("lambda_grid: count must be >= 1");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lambda_max;
    return grid;
  }
  const double log_hi = std::log10(lambda_max);
  const double step = decades / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) grid[i] = std::pow(10.0, log_hi - step * i);
  return grid;
}

LassoPath classo_path(const CMatrix& X, const CVector& y, const std::vector<double>& lambdas,
                      const LassoOptions& opts) {
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] < lambdas[i - 1])) {
      throw std::invalid_argument("classo_path: lambdas must be strictly decreasing");
    }
  }
  LassoPath path;
  path.lambdas = lambdas;
  path.solutions.reserve(lambdas.size());
  CVector warm = CVector::Zero(X.cols());
  for (const double lambda : lambdas) {
    LassoSolution sol = classo(X, y, lambda, warm, opts);
    warm = sol.beta;
    path.solutions.push_back(std::move(sol));
  }
  return path;
}

double classo_kkt_residual(const CMatrix& X, const CVector& y, double lambda,
                           const CVector& beta) {
  const CVector r = y - X * beta;
  const double inv_n = 1.0 / static_cast<double>(X.rows());
  double viol = 0.0;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const Complex g = X.col(j).dot(r) * inv_n;
    if (beta(j) == Complex(0.0, 0.0)) {
      viol = std::max(viol, std::abs(g) - lambda);
    } else {
      viol = std::max(viol, std::abs(g - lambda * beta(j) / std::abs(beta(j))));
    }
  }
  return std::max(viol, 0.0);
}

double classo_cov_kkt_residual(const CMatrix& S, const CVector& s, double lambda,
                               const CVector& beta) {
  const CVector g = s - S * beta;
  double viol = 0.0;
  for (Eigen::Index j = 0; j < S.rows(); ++j) {
    if (beta(j) == Complex(0.0, 0.0)) {
      viol = std::max(viol, std::abs(g(j)) - lambda);
    } else {
      viol = std::max(viol, std::abs(g(j) - lambda * beta(j) / std::abs(beta(j))));
    }
  }
  return std::max(viol, 0.0);
}

}  // namespace specprec
