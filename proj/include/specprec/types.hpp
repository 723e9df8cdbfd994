#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace specprec {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using CMatrix = Matrix<Complex>;
using CVector = Vector<Complex>;
using RMatrix = Matrix<double>;
using RVector = Vector<double>;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// n x p panel of real-valued observations, one time point per row.
struct TimeSeriesPanel {
  RMatrix values;
  std::vector<std::string> names;  // optional column labels

  Eigen::Index n() const { return values.rows(); }
  Eigen::Index p() const { return values.cols(); }
};

/// Smoothed periodogram estimate at one Fourier frequency.
struct SpectralEstimate {
  int frequency_index = 0;  // index j into the Fourier grid F_n
  int m = 0;                // smoothing half-width, 2m+1 terms averaged
  CMatrix fhat;             // p x p, Hermitian PSD
};

struct LassoSolution {
  CVector beta;
  double lambda = 0.0;
  int iterations = 0;  // full coordinate sweeps
  bool converged = false;
  double objective = 0.0;
};

struct LassoPath {
  std::vector<double> lambdas;  // strictly decreasing
  std::vector<LassoSolution> solutions;
};

struct PrecisionEstimate {
  CMatrix theta;
  double lambda = 0.0;
  double kkt_residual = 0.0;
  bool converged = false;
};

struct PrecisionPath {
  std::vector<double> lambdas;
  std::vector<PrecisionEstimate> estimates;
  std::vector<double> ebic;    // NaN where not computable
  std::size_t selected_index = 0;
  bool has_selection = false;  // false if no converged PD estimate on the path
};

enum class SymmetrizeRule { And, Or };

struct NodewiseResult {
  CMatrix coefficients;  // (p-1) x p, column k holds the regression for node k
  BoolArray support;     // p x p symmetric, diagonal fixed to true
  SymmetrizeRule rule = SymmetrizeRule::Or;
};

struct VarmaModel {
  std::vector<RMatrix> ar;  // A_1..A_P
  std::vector<RMatrix> ma;  // B_1..B_Q
  RMatrix sigma_eps;        // innovation covariance, symmetric PD

  Eigen::Index dim() const { return sigma_eps.rows(); }
};

enum class DgpFamily { WhiteNoise, Var1, Varma22, Var1Block };

struct DgpSpec {
  DgpFamily family = DgpFamily::WhiteNoise;
  int p = 1;
  int n = 2;
  std::uint64_t seed = 0;
};

struct SupportScores {
  std::optional<double> precision;  // absent when nothing is predicted positive
  double recall = 0.0;
  double accuracy = 0.0;
};

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), ordered by lambda descending
  double auroc = 0.0;
};

}  // namespace specprec
