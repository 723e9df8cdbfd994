#include "specprec/simulate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace specprec {

namespace {

constexpr int kBurnIn = 500;

RMatrix block_diagonal(const RMatrix& block, int copies) {
  const Eigen::Index b = block.rows();
  RMatrix out = RMatrix::Zero(b * copies, b * copies);
  for (int c = 0; c < copies; ++c) out.block(c * b, c * b, b, b) = block;
  return out;
}

double companion_spectral_radius(const std::vector<RMatrix>& ar, Eigen::Index p) {
  if (ar.empty()) return 0.0;
  const Eigen::Index order = static_cast<Eigen::Index>(ar.size());
  RMatrix companion = RMatrix::Zero(order * p, order * p);
  for (Eigen::Index i = 0; i < order; ++i) {
    companion.block(0, i * p, p, p) = ar[i];
  }
  if (order > 1) {
    companion.block(p, 0, (order - 1) * p, (order - 1) * p)
        .setIdentity();
  }
  return Eigen::EigenSolver<RMatrix>(companion, /*computeEigenvectors=*/false)
      .eigenvalues()
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

void validate_model(const VarmaModel& model) {
  const Eigen::Index p = model.sigma_eps.rows();
  if (model.sigma_eps.cols() != p || p < 1) {
    throw std::invalid_argument("varma: sigma_eps must be square");
  }
  if ((model.sigma_eps - model.sigma_eps.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("varma: sigma_eps must be symmetric");
  }
  Eigen::LLT<RMatrix> llt(model.sigma_eps);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("varma: sigma_eps must be positive definite");
  }
  for (const RMatrix& a : model.ar) {
    if (a.rows() != p || a.cols() != p) throw std::invalid_argument("varma: AR size mismatch");
  }
  for (const RMatrix& b : model.ma) {
    if (b.rows() != p || b.cols() != p) throw std::invalid_argument("varma: MA size mismatch");
  }
  if (companion_spectral_radius(model.ar, p) >= 1.0 - 1e-8) {
    throw std::invalid_argument("varma: AR part is not stable");
  }
}

VarmaModel build_dgp(const DgpSpec& spec) {
  if (spec.p < 1) throw std::invalid_argument("build_dgp: p must be >= 1");
  const int p = spec.p;
  VarmaModel model;
  switch (spec.family) {
    case DgpFamily::WhiteNoise: {
      // The tridiagonal matrix is the precision-scale object: sampling uses
      // its inverse as the covariance, so the true spectral precision
      // 2*pi*Sigma^{-1} carries the tridiagonal sparsity pattern.
      RMatrix prec = RMatrix::Zero(p, p);
      prec.diagonal().setConstant(0.7);
      for (int i = 0; i + 1 < p; ++i) {
        prec(i, i + 1) = 0.3;
        prec(i + 1, i) = 0.3;
      }
      RMatrix sigma = prec.llt().solve(RMatrix::Identity(p, p));
      model.sigma_eps = (sigma + sigma.transpose()) / 2.0;
      break;
    }
    case DgpFamily::Var1: {
      RMatrix a = RMatrix::Zero(p, p);
      for (int i = 0; i < p; ++i) a(i, i) = 0.5;
      for (int i = 0; i + 1 < p; ++i) a(i, i + 1) = -0.3;
      for (int i = 0; i + 2 < p; ++i) a(i, i + 2) = 0.2;
      model.ar.push_back(a);
      model.sigma_eps = RMatrix::Identity(p, p);
      break;
    }
    case DgpFamily::Varma22: {
      if (p % 5 != 0) throw std::invalid_argument("build_dgp: Varma22 needs p divisible by 5");
      model.ar.push_back(0.4 * RMatrix::Identity(p, p));
      model.ar.push_back(0.2 * RMatrix::Identity(p, p));
      const RMatrix unit = RMatrix::Identity(5, 5) + RMatrix::Ones(5, 5);
      model.ma.push_back(block_diagonal(1.5 * unit, p / 5));
      model.ma.push_back(block_diagonal(0.75 * unit, p / 5));
      model.sigma_eps = RMatrix::Identity(p, p);
      break;
    }
    case DgpFamily::Var1Block: {
      if (p % 5 != 0) throw std::invalid_argument("build_dgp: Var1Block needs p divisible by 5");
      RMatrix block = RMatrix::Zero(5, 5);
      block.diagonal().setConstant(0.5);
      for (int i = 0; i + 1 < 5; ++i) block(i, i + 1) = 0.2;
      model.ar.push_back(block_diagonal(block, p / 5));
      model.sigma_eps = 0.5 * RMatrix::Identity(p, p);
      break;
    }
  }
  validate_model(model);
  return model;
}

TimeSeriesPanel simulate_path(const VarmaModel& model, int n, std::uint64_t seed) {
  validate_model(model);
  if (n < 2) throw std::invalid_argument("simulate_path: n must be >= 2");
  const Eigen::Index p = model.dim();
  const int ar_order = static_cast<int>(model.ar.size());
  const int ma_order = static_cast<int>(model.ma.size());

  const RMatrix chol = Eigen::LLT<RMatrix>(model.sigma_eps).matrixL();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int total = kBurnIn + n;
  RMatrix x_hist = RMatrix::Zero(std::max(ar_order, 1), p);    // row i: X_{t-1-i}
  RMatrix eps_hist = RMatrix::Zero(std::max(ma_order, 1), p);  // row i: eps_{t-1-i}
  RMatrix out(n, p);

  RVector z(p);
  for (int t = 0; t < total; ++t) {
    for (Eigen::Index i = 0; i < p; ++i) z(i) = gauss(rng);
    const RVector eps = chol * z;
    RVector x = eps;
    for (int i = 0; i < ar_order; ++i) x += model.ar[i] * x_hist.row(i).transpose();
    for (int i = 0; i < ma_order; ++i) x += model.ma[i] * eps_hist.row(i).transpose();
    for (int i = ar_order - 1; i > 0; --i) x_hist.row(i) = x_hist.row(i - 1);
    if (ar_order > 0) x_hist.row(0) = x.transpose();
    for (int i = ma_order - 1; i > 0; --i) eps_hist.row(i) = eps_hist.row(i - 1);
    if (ma_order > 0) eps_hist.row(0) = eps.transpose();
    if (t >= kBurnIn) out.row(t - kBurnIn) = x.transpose();
  }

  TimeSeriesPanel panel;
  panel.values = std::move(out);
  panel.names.reserve(p);
  for (Eigen::Index i = 0; i < p; ++i) panel.names.push_back("x" + std::to_string(i + 1));
  return panel;
}

CMatrix true_spectral_density(const VarmaModel& model, double omega) {
  validate_model(model);
  const Eigen::Index p = model.dim();
  const Complex z = std::polar(1.0, -omega);

  CMatrix ar_poly = CMatrix::Identity(p, p);
  Complex zt = z;
  for (const RMatrix& a : model.ar) {
    ar_poly -= zt * a.cast<Complex>();
    zt *= z;
  }
  CMatrix ma_poly = CMatrix::Identity(p, p);
  zt = z;
  for (const RMatrix& b : model.ma) {
    ma_poly += zt * b.cast<Complex>();
    zt *= z;
  }

  Eigen::FullPivLU<CMatrix> lu(ar_poly);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("true_spectral_density: AR polynomial singular at omega");
  }
  const CMatrix ar_inv = lu.inverse();
  CMatrix f = ar_inv * ma_poly * model.sigma_eps.cast<Complex>() * ma_poly.adjoint() *
              ar_inv.adjoint() / (2.0 * std::numbers::pi);
  return ((f + f.adjoint()) / 2.0).eval();
}

CMatrix true_precision(const VarmaModel& model, double omega) {
  const CMatrix f = true_spectral_density(model, omega);
  Eigen::FullPivLU<CMatrix> lu(f);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("true_precision: spectral density singular at omega");
  }
  CMatrix theta = lu.inverse();
  return ((theta + theta.adjoint()) / 2.0).eval();
}

CMatrix sample_complex_normal(const CVector& mu, const CMatrix& sigma, int count,
                              std::uint64_t seed) {
  const Eigen::Index p = mu.size();
  if (sigma.rows() != p || sigma.cols() != p) {
    throw std::invalid_argument("sample_complex_normal: size mismatch");
  }
  if ((sigma - sigma.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, sigma.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("sample_complex_normal: sigma must be Hermitian");
  }
  if (count < 1) throw std::invalid_argument("sample_complex_normal: count must be >= 1");

  RMatrix cov(2 * p, 2 * p);
  cov.topLeftCorner(p, p) = sigma.real();
  cov.topRightCorner(p, p) = -sigma.imag();
  cov.bottomLeftCorner(p, p) = sigma.imag();
  cov.bottomRightCorner(p, p) = sigma.real();
  cov *= 0.5;

  Eigen::SelfAdjointEigenSolver<RMatrix> eig(cov);
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw std::invalid_argument("sample_complex_normal: sigma must be positive semidefinite");
  }
  const RMatrix root =
      eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix out(count, p);
  RVector z(2 * p);
  for (int r = 0; r < count; ++r) {
    for (Eigen::Index i = 0; i < 2 * p; ++i) z(i) = gauss(rng);
    const RVector y = root * z;
    for (Eigen::Index i = 0; i < p; ++i) {
      out(r, i) = mu(i) + Complex(y(i), y(p + i));
    }
  }
  return out;
}

}  // namespace specprec
