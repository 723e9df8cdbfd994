#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "specprec/metrics.hpp"
#include "specprec/nodewise.hpp"
#include "specprec/simulate.hpp"
#include "specprec/spectral.hpp"

using namespace specprec;
using testing::random_complex_matrix;

TEST_CASE("nodewise regression basics") {
  std::mt19937_64 rng(3);
  const CMatrix Z = random_complex_matrix(25, 5, rng);

  SUBCASE("large lambda leaves only the diagonal") {
    const double big = nodewise_lambda_max(Z) * 1.01;
    const NodewiseResult res = nodewise_regression(Z, big);
    for (Eigen::Index k = 0; k < 5; ++k) {
      for (Eigen::Index l = 0; l < 5; ++l) {
        CHECK(res.support(k, l) == (k == l));
      }
    }
  }

  SUBCASE("support is symmetric under either rule and AND is contained in OR") {
    const double lambda = 0.3 * nodewise_lambda_max(Z);
    const NodewiseResult any = nodewise_regression(Z, lambda, SymmetrizeRule::Or);
    const NodewiseResult both = nodewise_regression(Z, lambda, SymmetrizeRule::And);
    for (Eigen::Index k = 0; k < 5; ++k) {
      CHECK(any.support(k, k));
      CHECK(both.support(k, k));
      for (Eigen::Index l = 0; l < 5; ++l) {
        CHECK(any.support(k, l) == any.support(l, k));
        CHECK(both.support(k, l) == both.support(l, k));
        if (both.support(k, l)) CHECK(any.support(k, l));
      }
    }
  }

  SUBCASE("p = 2 is symmetric by construction") {
    const CMatrix Z2 = random_complex_matrix(12, 2, rng);
    const NodewiseResult res =
        nodewise_regression(Z2, 0.1 * nodewise_lambda_max(Z2), SymmetrizeRule::And);
    CHECK(res.support(0, 1) == res.support(1, 0));
  }

  SUBCASE("per-node penalties are honored") {
    std::vector<double> lambdas(5, 1e9);
    lambdas[2] = 1e-4;  // only node 2 gets a loose fit
    const NodewiseResult res = nodewise_regression(Z, lambdas, SymmetrizeRule::Or);
    bool node2_active = false;
    for (Eigen::Index j = 0; j < 4; ++j) {
      node2_active = node2_active || res.coefficients(j, 2) != Complex(0.0, 0.0);
    }
    CHECK(node2_active);
    for (Eigen::Index k : {0, 1, 3, 4}) {
      for (Eigen::Index j = 0; j < 4; ++j) CHECK(res.coefficients(j, k) == Complex(0.0, 0.0));
    }
  }

  SUBCASE("zero-norm columns are rejected") {
    CMatrix bad = Z;
    bad.col(1).setZero();
    CHECK_THROWS_AS(nodewise_regression(bad, 0.1), std::invalid_argument);
  }
}

TEST_CASE("nodewise OLS") {
  std::mt19937_64 rng(7);

  SUBCASE("hand-solved 1x1 normal equation") {
    CMatrix Z(3, 2);
    Z << Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(0.0, 1.0), Complex(1.0, 1.0),
        Complex(1.0, -1.0), Complex(0.0, 2.0);
    const CMatrix coef = nodewise_ols(Z);
    const Complex expect0 = Z.col(1).dot(Z.col(0)) / Z.col(1).squaredNorm();
    CHECK(std::abs(coef(0, 0) - expect0) < 1e-12);
    const Complex expect1 = Z.col(0).dot(Z.col(1)) / Z.col(0).squaredNorm();
    CHECK(std::abs(coef(0, 1) - expect1) < 1e-12);
  }

  SUBCASE("orthogonal predictors decouple") {
    CMatrix Z = CMatrix::Zero(6, 3);
    Z(0, 0) = 2.0;
    Z(1, 1) = Complex(0.0, 3.0);
    Z(2, 2) = 1.0;
    Z(3, 0) = 1.0;  // overlap between response 2 and predictor 0 only via row 3
    Z(3, 2) = 0.5;
    const CMatrix coef = nodewise_ols(Z);
    // Node 2's regression on (Z0, Z1): coefficient on Z1 is exactly zero.
    CHECK(std::abs(coef(1, 2)) < 1e-14);
    CHECK(std::abs(coef(0, 2) - Z.col(0).dot(Z.col(2)) / Z.col(0).squaredNorm()) < 1e-12);
  }

  SUBCASE("lasso at vanishing lambda approaches OLS") {
    const CMatrix Z = random_complex_matrix(40, 4, rng);
    const CMatrix ols = nodewise_ols(Z);
    const NodewiseResult res =
        nodewise_regression(Z, 1e-10, SymmetrizeRule::Or, LassoOptions{.tol = 1e-12});
    CHECK((res.coefficients - ols).cwiseAbs().maxCoeff() < 1e-6);
  }

  SUBCASE("rank deficiency is rejected") {
    CMatrix Z = random_complex_matrix(10, 4, rng);
    Z.col(3) = Z.col(2);  // response 0's design has duplicate columns
    CHECK_THROWS_AS(nodewise_ols(Z), std::invalid_argument);
    CHECK_THROWS_AS(nodewise_ols(random_complex_matrix(3, 5, rng)), std::invalid_argument);
  }
}

TEST_CASE("permutation equivariance of the support") {
  std::mt19937_64 rng(11);
  const Eigen::Index p = 5;
  const CMatrix Z = random_complex_matrix(30, p, rng);
  const double lambda = 0.25 * nodewise_lambda_max(Z);
  const NodewiseResult base = nodewise_regression(Z, lambda);

  std::vector<Eigen::Index> perm = {3, 0, 4, 1, 2};
  CMatrix Zp(Z.rows(), p);
  for (Eigen::Index j = 0; j < p; ++j) Zp.col(j) = Z.col(perm[j]);
  const NodewiseResult permuted = nodewise_regression(Zp, lambda);
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      CHECK(permuted.support(k, l) == base.support(perm[k], perm[l]));
    }
  }
}

TEST_CASE("support path sweeps a shared grid") {
  std::mt19937_64 rng(13);
  const CMatrix Z = random_complex_matrix(30, 6, rng);
  const std::vector<double> lambdas = lambda_grid(nodewise_lambda_max(Z), 15, 2.0);
  const std::vector<BoolArray> supports = nodewise_support_path(Z, lambdas);
  REQUIRE(supports.size() == lambdas.size());
  // Empty off-diagonal at lambda_max, growing as lambda shrinks.
  int first_edges = 0, last_edges = 0;
  for (Eigen::Index k = 0; k < 6; ++k) {
    for (Eigen::Index l = k + 1; l < 6; ++l) {
      first_edges += supports.front()(k, l) ? 1 : 0;
      last_edges += supports.back()(k, l) ? 1 : 0;
    }
  }
  CHECK(first_edges == 0);
  CHECK(last_edges > 0);
}

TEST_CASE("white-noise support recovery matches the reported operating range") {
  // p = 10, n = 400 via the DFT pipeline; mean AUROC over a few replicates
  // should sit within two reported standard deviations of 0.9667.
  const DgpSpec spec{DgpFamily::WhiteNoise, 10, 400, 0};
  const VarmaModel model = build_dgp(spec);
  const CMatrix truth = true_precision(model, 0.0);
  const int m = 20;
  const int reps = 10;
  double mean_auroc = 0.0;
  for (int r = 0; r < reps; ++r) {
    const TimeSeriesPanel panel = simulate_path(model, spec.n, 50 + r);
    const CMatrix Z = dft_data_matrix(panel, 0, m);
    const std::vector<double> lambdas = lambda_grid(nodewise_lambda_max(Z), 30, 2.5);
    mean_auroc += auroc(nodewise_support_path(Z, lambdas), truth);
  }
  mean_auroc /= reps;
  CHECK(mean_auroc > 0.9667 - 2.0 * 0.0298);
  CHECK(mean_auroc <= 1.0);
}
