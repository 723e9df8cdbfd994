#include <doctest.h>

#include <random>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

#include "oracles.hpp"
#include "specprec/classo.hpp"
#include "specprec/realify.hpp"

using namespace specprec;
using testing::random_complex_matrix;
using testing::random_complex_vector;
using testing::random_hermitian_pd;
using testing::random_scaled_design;

namespace {

// Well-conditioned random invertible matrix: unitary * diag(1..2) * unitary.
CMatrix random_well_conditioned(Eigen::Index p, std::mt19937_64& rng) {
  const CMatrix Q1 =
      Eigen::HouseholderQR<CMatrix>(random_complex_matrix(p, p, rng)).householderQ();
  const CMatrix Q2 =
      Eigen::HouseholderQR<CMatrix>(random_complex_matrix(p, p, rng)).householderQ();
  RVector d(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    d(i) = 1.0 + static_cast<double>(i) / std::max<Eigen::Index>(p - 1, 1);
  }
  return Q1 * d.cast<Complex>().asDiagonal() * Q2.adjoint();
}

}  // namespace

TEST_CASE("realify of scalars") {
  const Eigen::Matrix2d one = realify(Complex(1.0, 0.0));
  CHECK(one.isApprox(Eigen::Matrix2d::Identity()));

  const Eigen::Matrix2d i_mat = realify(Complex(0.0, 1.0));
  Eigen::Matrix2d rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  CHECK(i_mat.isApprox(rot));

  // Products map to matrix products: (3+4i)(1-2i) = 11-2i.
  const Eigen::Matrix2d lhs = realify(Complex(3.0, 4.0)) * realify(Complex(1.0, -2.0));
  const Complex prod = Complex(3.0, 4.0) * Complex(1.0, -2.0);
  CHECK(prod == Complex(11.0, -2.0));
  CHECK((lhs - realify(prod)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("realify of matrices") {
  CHECK(realify(CMatrix::Zero(2, 2)).isZero(0.0));
  CHECK(realify(CMatrix::Identity(3, 3)).isApprox(RMatrix::Identity(6, 6)));

  std::mt19937_64 rng(11);
  const CMatrix A = random_well_conditioned(4, rng);
  // Inverse law, complex LU inverse as the reference path.
  const CMatrix A_inv = A.fullPivLu().inverse();
  const RMatrix lhs = realify(A_inv);
  const RMatrix rhs = realify(A).fullPivLu().inverse();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((realify(A_inv) * realify(A) - RMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ring homomorphism on random inputs") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 5);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng() % 5);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 5);
    const CMatrix A = random_complex_matrix(m, k, rng);
    const CMatrix B = random_complex_matrix(m, k, rng);
    const CMatrix C = random_complex_matrix(k, n, rng);
    CHECK((realify((A + B).eval()) - (realify(A) + realify(B))).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((realify((A * C).eval()) - realify(A) * realify(C)).cwiseAbs().maxCoeff() < 1e-12);
    // Conjugate transpose maps to plain transpose, exactly.
    CHECK((realify(A.adjoint().eval()) - realify(A).transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("column orthogonality and norms") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const Complex z(std::normal_distribution<>()(rng), std::normal_distribution<>()(rng));
    const Eigen::Matrix2d phi = realify(z);
    CHECK(std::abs(phi.col(0).dot(phi.col(1))) < 1e-14);
    CHECK(phi.col(0).squaredNorm() == doctest::Approx(std::norm(z)).epsilon(1e-12));

    const CVector v = random_complex_vector(6, rng);
    const RMatrix phi_v = realify(v);
    CHECK(std::abs(phi_v.col(0).dot(phi_v.col(1))) < 1e-12);
    CHECK(phi_v.squaredNorm() == doctest::Approx(2.0 * v.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("log-det and trace doubling") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index p = 2 + static_cast<Eigen::Index>(rng() % 4);
    const CMatrix theta = random_hermitian_pd(p, rng);
    const CMatrix psd_root = random_complex_matrix(p, p, rng);
    const CMatrix psd = psd_root * psd_root.adjoint();

    Eigen::LLT<CMatrix> llt(theta);
    double logdet_c = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) logdet_c += 2.0 * std::log(llt.matrixLLT()(i, i).real());
    const RMatrix M = realify(theta);
    Eigen::LLT<RMatrix> llt_r(M);
    double logdet_r = 0.0;
    for (Eigen::Index i = 0; i < 2 * p; ++i) logdet_r += 2.0 * std::log(llt_r.matrixLLT()(i, i));
    CHECK(logdet_r == doctest::Approx(2.0 * logdet_c).epsilon(1e-10));

    const double tr_c = (psd * theta).trace().real();
    const double tr_r = (realify(psd) * M).trace();
    CHECK(tr_r == doctest::Approx(2.0 * tr_c).epsilon(1e-10));
  }
}

TEST_CASE("pair-to-stacked permutation") {
  CHECK(pair_to_stacked_permutation(1) == Eigen::VectorXi::LinSpaced(2, 0, 1));
  Eigen::VectorXi k2(4);
  k2 << 0, 2, 1, 3;
  CHECK(pair_to_stacked_permutation(2) == k2);
  Eigen::VectorXi k3(6);
  k3 << 0, 2, 4, 1, 3, 5;
  CHECK(pair_to_stacked_permutation(3) == k3);
  CHECK_THROWS_AS(pair_to_stacked_permutation(0), std::invalid_argument);

  // Applying the permutation to the first column of realify(z) gives the
  // stacked vector.
  std::mt19937_64 rng(3);
  const CVector z = random_complex_vector(5, rng);
  const RVector interleaved = realify(z).col(0);
  const Eigen::VectorXi perm = pair_to_stacked_permutation(5);
  RVector stacked(10);
  for (Eigen::Index r = 0; r < 10; ++r) stacked(r) = interleaved(perm(r));
  CHECK(stacked.isApprox(stacked_vector(z)));
}

TEST_CASE("stacked vector and matrix forms") {
  CVector z1(1);
  z1 << Complex(1.0, 2.0);
  RVector expect1(2);
  expect1 << 1.0, 2.0;
  CHECK(stacked_vector(z1).isApprox(expect1));

  CVector z2(2);
  z2 << Complex(0.0, 1.0), Complex(1.0, 0.0);
  RVector expect2(4);
  expect2 << 0.0, 1.0, 1.0, 0.0;
  CHECK(stacked_vector(z2).isApprox(expect2));
  CHECK(stacked_vector(CVector::Zero(3)).isZero(0.0));

  CMatrix zi(1, 1);
  zi << Complex(0.0, 1.0);
  RMatrix rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  CHECK(stacked_matrix(zi).isApprox(rot));

  std::mt19937_64 rng(9);
  RMatrix real_part = RMatrix::Random(3, 4);
  const CMatrix R = real_part.cast<Complex>();
  const RMatrix stacked = stacked_matrix(R);
  CHECK(stacked.topLeftCorner(3, 4).isApprox(real_part));
  CHECK(stacked.topRightCorner(3, 4).isZero(0.0));
  CHECK(stacked.bottomRightCorner(3, 4).isApprox(real_part));

  const CMatrix Z = random_complex_matrix(4, 3, rng);
  CHECK(stacked_matrix(Z).squaredNorm() == doctest::Approx(2.0 * Z.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("complexify inverts realify") {
  std::mt19937_64 rng(13);
  const CMatrix Z = random_complex_matrix(3, 5, rng);
  const RMatrix M = realify(Z);
  CHECK(realified_structure_error(M) == 0.0);
  CHECK((complexify(M) - Z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("realified group lasso oracle basics") {
  std::mt19937_64 rng(21);
  const Eigen::Index n = 24;
  const CMatrix X = random_scaled_design(n, 6, rng);
  const CVector y = random_complex_vector(n, rng);

  SUBCASE("full shrinkage at lambda_max") {
    const double lmax = classo_lambda_max(X, y);
    const auto res = realified_group_lasso(X, y, lmax * 1.0001);
    REQUIRE(res.converged);
    CHECK(res.beta.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("single predictor at lambda zero is the least squares fit") {
    const CMatrix X1 = X.leftCols(1);
    const auto res = realified_group_lasso(X1, y, 0.0);
    REQUIRE(res.converged);
    const Complex ols = X1.col(0).dot(y) / static_cast<double>(n);
    CHECK(std::abs(res.beta(0) - ols) < 1e-9);
  }

  SUBCASE("rejects unscaled columns") {
    CMatrix bad = X;
    bad.col(0) *= 2.0;
    CHECK_THROWS_AS(realified_group_lasso(bad, y, 0.1), std::invalid_argument);
  }
}
