#include "specprec/nodewise.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

namespace specprec {

namespace {

struct ScaledDesign {
  CMatrix X;       // columns of Z without node k, scaled to ||.|| = sqrt(N)
  RVector scale;   // per-column factor applied (multiply coefficients by it to unscale)
};

ScaledDesign drop_and_scale(const CMatrix& Z, Eigen::Index k) {
  const Eigen::Index N = Z.rows();
  const Eigen::Index p = Z.cols();
  ScaledDesign d;
  d.X.resize(N, p - 1);
  d.scale.resize(p - 1);
  const double sqrt_n = std::sqrt(static_cast<double>(N));
  Eigen::Index c = 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (j == k) continue;
    const double norm = Z.col(j).norm();
    if (!(norm > 0.0)) {
      throw std::invalid_argument("nodewise_regression: zero-norm column in Z");
    }
    d.X.col(c) = Z.col(j) * (sqrt_n / norm);
    d.scale(c) = sqrt_n / norm;
    ++c;
  }
  return d;
}

BoolArray symmetrize(const BoolArray& raw, SymmetrizeRule rule) {
  const Eigen::Index p = raw.rows();
  BoolArray out(p, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    out(k, k) = true;
    for (Eigen::Index l = k + 1; l < p; ++l) {
      const bool v = rule == SymmetrizeRule::And ? (raw(k, l) && raw(l, k))
                                                 : (raw(k, l) || raw(l, k));
      out(k, l) = v;
      out(l, k) = v;
    }
  }
  return out;
}

/// Raw (asymmetric) support from per-node coefficients: entry (j, k) marks
/// coefficient of series j in node k's regression.
BoolArray raw_support(const CMatrix& coefficients) {
  const Eigen::Index p = coefficients.cols();
  BoolArray raw = BoolArray::Constant(p, p, false);
  for (Eigen::Index k = 0; k < p; ++k) {
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (j == k) continue;
      raw(j, k) = coefficients(c, k) != Complex(0.0, 0.0);
      ++c;
    }
  }
  return raw;
}

}  // namespace

NodewiseResult nodewise_regression(const CMatrix& Z, const std::vector<double>& lambda_per_node,
                                   SymmetrizeRule rule, const LassoOptions& opts) {
  const Eigen::Index p = Z.cols();
  if (p < 2) throw std::invalid_argument("nodewise_regression: need at least two series");
  if (lambda_per_node.size() != static_cast<std::size_t>(p)) {
    throw std::invalid_argument("nodewise_regression: one lambda per node required");
  }
  NodewiseResult res;
  res.rule = rule;
  res.coefficients.resize(p - 1, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    const ScaledDesign d = drop_and_scale(Z, k);
    const LassoSolution sol = classo(d.X, Z.col(k), lambda_per_node[k], opts);
    res.coefficients.col(k) = sol.beta.cwiseProduct(d.scale.cast<Complex>());
  }
  res.support = symmetrize(raw_support(res.coefficients), rule);
  return res;
}

NodewiseResult nodewise_regression(const CMatrix& Z, double lambda, SymmetrizeRule rule,
                                   const LassoOptions& opts) {
  return nodewise_regression(Z, std::vector<double>(Z.cols(), lambda), rule, opts);
}

CMatrix nodewise_ols(const CMatrix& Z) {
  const Eigen::Index N = Z.rows();
  const Eigen::Index p = Z.cols();
  if (p < 2) throw std::invalid_argument("nodewise_ols: need at least two series");
  if (N <= p - 1) throw std::invalid_argument("nodewise_ols: need N > p-1");
  CMatrix coef(p - 1, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    CMatrix X(N, p - 1);
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (j != k) X.col(c++) = Z.col(j);
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(X);
    if (qr.rank() < p - 1) {
      throw std::invalid_argument("nodewise_ols: rank-deficient design");
    }
    coef.col(k) = qr.solve(Z.col(k));
  }
  return coef;
}

double nodewise_lambda_max(const CMatrix& Z) {
  const Eigen::Index p = Z.cols();
  double lmax = 0.0;
  for (Eigen::Index k = 0; k < p; ++k) {
    const ScaledDesign d = drop_and_scale(Z, k);
    lmax = std::max(lmax, classo_lambda_max(d.X, Z.col(k)));
  }
  return lmax;
}

std::vector<BoolArray> nodewise_support_path(const CMatrix& Z, const std::vector<double>& lambdas,
                                             SymmetrizeRule rule, const LassoOptions& opts) {
  const Eigen::Index p = Z.cols();
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] < lambdas[i - 1])) {
      throw std::invalid_argument("nodewise_support_path: lambdas must be strictly decreasing");
    }
  }
  // Fit all nodes along the path, warm-starting each node separately.
  std::vector<CMatrix> coef_per_lambda(lambdas.size(), CMatrix(p - 1, p));
  for (Eigen::Index k = 0; k < p; ++k) {
    const ScaledDesign d = drop_and_scale(Z, k);
    CVector warm = CVector::Zero(p - 1);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const LassoSolution sol = classo(d.X, Z.col(k), lambdas[i], warm, opts);
      warm = sol.beta;
      coef_per_lambda[i].col(k) = sol.beta;  // support only; no need to unscale
    }
  }
  std::vector<BoolArray> supports;
  supports.reserve(lambdas.size());
  for (const CMatrix& coef : coef_per_lambda) {
    supports.push_back(symmetrize(raw_support(coef), rule));
  }
  return supports;
}

}  // namespace specprec
