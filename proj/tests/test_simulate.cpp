#include <doctest.h>

#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "specprec/simulate.hpp"
#include "specprec/spectral.hpp"

using namespace specprec;

TEST_CASE("dgp construction") {
  SUBCASE("white noise carries the tridiagonal precision pattern") {
    const VarmaModel model = build_dgp({DgpFamily::WhiteNoise, 3, 100, 0});
    CHECK(model.ar.empty());
    CHECK(model.ma.empty());
    // The defining tridiagonal matrix is the inverse of the sampling
    // covariance.
    RMatrix expect(3, 3);
    expect << 0.7, 0.3, 0.0, 0.3, 0.7, 0.3, 0.0, 0.3, 0.7;
    const RMatrix inv = model.sigma_eps.inverse();
    CHECK((inv - expect).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("VAR(1) band structure") {
    const VarmaModel model = build_dgp({DgpFamily::Var1, 4, 100, 0});
    REQUIRE(model.ar.size() == 1);
    RMatrix expect(4, 4);
    expect << 0.5, -0.3, 0.2, 0.0, 0.0, 0.5, -0.3, 0.2, 0.0, 0.0, 0.5, -0.3, 0.0, 0.0, 0.0, 0.5;
    CHECK((model.ar[0] - expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK(model.sigma_eps.isApprox(RMatrix::Identity(4, 4)));
  }

  SUBCASE("VARMA(2,2) blocks") {
    const VarmaModel model = build_dgp({DgpFamily::Varma22, 5, 100, 0});
    REQUIRE(model.ar.size() == 2);
    REQUIRE(model.ma.size() == 2);
    CHECK(model.ar[0].isApprox(0.4 * RMatrix::Identity(5, 5)));
    CHECK(model.ar[1].isApprox(0.2 * RMatrix::Identity(5, 5)));
    CHECK(model.ma[0](0, 0) == doctest::Approx(3.0));
    CHECK(model.ma[0](0, 1) == doctest::Approx(1.5));
    CHECK(model.ma[1](2, 2) == doctest::Approx(1.5));
    CHECK(model.ma[1](4, 0) == doctest::Approx(0.75));
    CHECK_THROWS_AS(build_dgp({DgpFamily::Varma22, 7, 100, 0}), std::invalid_argument);
  }

  SUBCASE("block VAR(1)") {
    const VarmaModel model = build_dgp({DgpFamily::Var1Block, 10, 100, 0});
    REQUIRE(model.ar.size() == 1);
    CHECK(model.ar[0](0, 0) == doctest::Approx(0.5));
    CHECK(model.ar[0](0, 1) == doctest::Approx(0.2));
    CHECK(model.ar[0](4, 5) == doctest::Approx(0.0));  // no coupling across blocks
    CHECK(model.sigma_eps.isApprox(0.5 * RMatrix::Identity(10, 10)));
    CHECK_THROWS_AS(build_dgp({DgpFamily::Var1Block, 12, 100, 0}), std::invalid_argument);
  }

  SUBCASE("stability gate") {
    VarmaModel unit;
    unit.sigma_eps = RMatrix::Identity(2, 2);
    unit.ar.push_back(RMatrix::Identity(2, 2));  // unit root
    CHECK_THROWS_AS(validate_model(unit), std::invalid_argument);
    CHECK_THROWS_AS(simulate_path(unit, 50, 0), std::invalid_argument);
  }
}

TEST_CASE("simulation is deterministic per seed") {
  const VarmaModel model = build_dgp({DgpFamily::Var1, 3, 64, 0});
  const TimeSeriesPanel a = simulate_path(model, 64, 99);
  const TimeSeriesPanel b = simulate_path(model, 64, 99);
  const TimeSeriesPanel c = simulate_path(model, 64, 100);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.values - c.values).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("white noise sample covariance matches the model") {
  const VarmaModel model = build_dgp({DgpFamily::WhiteNoise, 3, 2, 0});
  const int n = 100000;
  const TimeSeriesPanel panel = simulate_path(model, n, 7);
  const RMatrix centered = panel.values.rowwise() - panel.values.colwise().mean();
  const RMatrix cov = centered.transpose() * centered / static_cast<double>(n - 1);
  // Entry-level Monte Carlo tolerance ~ 3 * sd / sqrt(n).
  for (Eigen::Index a = 0; a < 3; ++a) {
    for (Eigen::Index b = 0; b < 3; ++b) {
      const double sd = std::sqrt(model.sigma_eps(a, a) * model.sigma_eps(b, b) +
                                  model.sigma_eps(a, b) * model.sigma_eps(a, b));
      CHECK(std::abs(cov(a, b) - model.sigma_eps(a, b)) < 3.5 * sd / std::sqrt(double(n)));
    }
  }
}

TEST_CASE("VAR(1) lag-one autocovariance obeys Yule-Walker") {
  const VarmaModel model = build_dgp({DgpFamily::Var1, 2, 2, 0});
  const RMatrix& A = model.ar[0];
  const RMatrix gamma0 = testing::var1_gamma0(A, model.sigma_eps);
  const RMatrix expect_lag1 = A * gamma0;

  const int n = 200000;
  const TimeSeriesPanel panel = simulate_path(model, n, 21);
  RMatrix lag1 = RMatrix::Zero(2, 2);
  for (int t = 1; t < n; ++t) {
    lag1 += panel.values.row(t).transpose() * panel.values.row(t - 1);
  }
  lag1 /= static_cast<double>(n - 1);
  CHECK((lag1 - expect_lag1).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("true spectral density") {
  SUBCASE("white noise is flat") {
    const VarmaModel model = build_dgp({DgpFamily::WhiteNoise, 4, 2, 0});
    const CMatrix f0 = true_spectral_density(model, 0.0);
    for (double omega : {0.3, 1.2, std::numbers::pi}) {
      const CMatrix f = true_spectral_density(model, omega);
      CHECK((f - f0).cwiseAbs().maxCoeff() < 1e-12);
    }
    const CMatrix expect =
        model.sigma_eps.cast<Complex>() / (2.0 * std::numbers::pi);
    CHECK((f0 - expect).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("VAR(1) matches the truncated autocovariance series") {
    const VarmaModel model = build_dgp({DgpFamily::Var1, 2, 2, 0});
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    for (int rep = 0; rep < 10; ++rep) {
      const double omega = uni(rng);
      const CMatrix direct = true_spectral_density(model, omega);
      const CMatrix series =
          testing::var1_spectral_truncated(model.ar[0], model.sigma_eps, omega, 500);
      CHECK((direct - series).cwiseAbs().maxCoeff() < 1e-4);
    }
  }

  SUBCASE("VARMA(2,2) matches a long moving-average expansion") {
    // Independent route: expand X_t = sum_k Psi_k eps_{t-k} and evaluate
    // f = (1/2pi) Psi(e^{-iw}) Sigma Psi(e^{-iw})^+ with a long truncation.
    const VarmaModel model = build_dgp({DgpFamily::Varma22, 5, 2, 0});
    const Eigen::Index p = 5;
    const int K = 300;
    std::vector<RMatrix> psi(K + 1, RMatrix::Zero(p, p));
    psi[0] = RMatrix::Identity(p, p);
    for (int k = 1; k <= K; ++k) {
      RMatrix acc = RMatrix::Zero(p, p);
      if (k <= static_cast<int>(model.ma.size())) acc += model.ma[k - 1];
      for (std::size_t a = 0; a < model.ar.size(); ++a) {
        const int lag = k - static_cast<int>(a) - 1;
        if (lag >= 0) acc += model.ar[a] * psi[lag];
      }
      psi[k] = acc;
    }
    for (const double omega : {0.0, 0.9, 2.2}) {
      CMatrix transfer = CMatrix::Zero(p, p);
      for (int k = 0; k <= K; ++k) {
        transfer += std::polar(1.0, -omega * k) * psi[k].cast<Complex>();
      }
      const CMatrix f_series = transfer * model.sigma_eps.cast<Complex>() *
                               transfer.adjoint() / (2.0 * std::numbers::pi);
      const CMatrix f_direct = true_spectral_density(model, omega);
      CHECK((f_direct - f_series).cwiseAbs().maxCoeff() < 1e-6);
    }
  }

  SUBCASE("Hermitian PSD at random frequencies and conjugate symmetric") {
    const VarmaModel model = build_dgp({DgpFamily::Varma22, 5, 2, 0});
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
    for (int rep = 0; rep < 100; ++rep) {
      const double omega = uni(rng);
      const CMatrix f = true_spectral_density(model, omega);
      CHECK((f - f.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(f);
      CHECK(eig.eigenvalues().minCoeff() > -1e-12);
      const CMatrix f_neg = true_spectral_density(model, -omega);
      CHECK((f_neg - f.conjugate()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("true precision") {
  SUBCASE("white noise: 2 pi times the tridiagonal matrix") {
    const VarmaModel model = build_dgp({DgpFamily::WhiteNoise, 5, 2, 0});
    const CMatrix theta = true_precision(model, 1.0);
    const CMatrix expect =
        2.0 * std::numbers::pi * model.sigma_eps.inverse().cast<Complex>();
    CHECK((theta - expect).cwiseAbs().maxCoeff() < 1e-10);
    // tridiagonal sparsity
    CHECK(std::abs(theta(0, 2)) < 1e-10);
    CHECK(std::abs(theta(0, 4)) < 1e-10);
    CHECK(std::abs(theta(0, 1)) > 0.1);
  }

  SUBCASE("product with the density is the identity") {
    const VarmaModel model = build_dgp({DgpFamily::Varma22, 5, 2, 0});
    for (const double omega : {0.0, 0.7, 3.0}) {
      const CMatrix f = true_spectral_density(model, omega);
      const CMatrix theta = true_precision(model, omega);
      CHECK((theta * f - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("VAR(1) precision is banded with bandwidth at most four") {
    const VarmaModel model = build_dgp({DgpFamily::Var1, 8, 2, 0});
    const CMatrix theta = true_precision(model, 0.0);
    for (Eigen::Index k = 0; k < 8; ++k) {
      for (Eigen::Index l = 0; l < 8; ++l) {
        if (std::abs(k - l) > 4) CHECK(std::abs(theta(k, l)) < 1e-10);
      }
    }
  }
}

TEST_CASE("averaged periodogram sharpens with a wider span on white noise") {
  const VarmaModel model = build_dgp({DgpFamily::WhiteNoise, 3, 2, 0});
  const CMatrix truth = true_spectral_density(model, 0.0);
  const int n = 1024;
  const int m_small = 32;  // floor(sqrt(n))
  const int m_large = 64;  // floor(sqrt(4 n))
  double err_small = 0.0, err_large = 0.0;
  for (int r = 0; r < 20; ++r) {
    const TimeSeriesPanel panel = simulate_path(model, n, 300 + r);
    err_small +=
        (averaged_periodogram(panel, 0, m_small).fhat - truth).cwiseAbs().maxCoeff();
    err_large +=
        (averaged_periodogram(panel, 0, m_large).fhat - truth).cwiseAbs().maxCoeff();
  }
  CHECK(err_large < err_small);
}

TEST_CASE("complex normal sampler") {
  SUBCASE("identity covariance: moments and vanishing pseudo-covariance") {
    const Eigen::Index p = 3;
    const CMatrix sigma = CMatrix::Identity(p, p);
    const CMatrix draws = sample_complex_normal(CVector::Zero(p), sigma, 60000, 11);
    const CMatrix cov = draws.adjoint() * draws / static_cast<double>(draws.rows());
    CHECK((cov - sigma).cwiseAbs().maxCoeff() < 0.03);
    const CMatrix pseudo = draws.transpose() * draws / static_cast<double>(draws.rows());
    CHECK(pseudo.cwiseAbs().maxCoeff() < 0.03);
  }

  SUBCASE("mean offset") {
    CVector mu(2);
    mu << Complex(1.0, -2.0), Complex(0.5, 0.25);
    const CMatrix draws = sample_complex_normal(mu, CMatrix::Identity(2, 2), 40000, 13);
    const CVector mean = draws.colwise().mean();
    CHECK((mean - mu).cwiseAbs().maxCoeff() < 0.03);
  }

  SUBCASE("real covariance splits evenly between the parts") {
    RMatrix s(2, 2);
    s << 2.0, 0.8, 0.8, 1.0;
    const CMatrix draws =
        sample_complex_normal(CVector::Zero(2), s.cast<Complex>(), 60000, 17);
    const RMatrix re = draws.real();
    const RMatrix im = draws.imag();
    const RMatrix cov_re = re.transpose() * re / static_cast<double>(re.rows());
    const RMatrix cov_im = im.transpose() * im / static_cast<double>(im.rows());
    const RMatrix cross = re.transpose() * im / static_cast<double>(re.rows());
    CHECK((cov_re - s / 2.0).cwiseAbs().maxCoeff() < 0.03);
    CHECK((cov_im - s / 2.0).cwiseAbs().maxCoeff() < 0.03);
    CHECK(cross.cwiseAbs().maxCoeff() < 0.03);
  }

  SUBCASE("rejects indefinite sigma") {
    CMatrix sigma = CMatrix::Identity(2, 2);
    sigma(0, 0) = -1.0;
    CHECK_THROWS_AS(sample_complex_normal(CVector::Zero(2), sigma, 10, 1),
                    std::invalid_argument);
  }
}
