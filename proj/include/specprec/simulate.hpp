#pragma once

#include <cstdint>

#include "specprec/types.hpp"

namespace specprec {

// Data generators used in the evaluation suite, plus closed-form spectral
// truth for VARMA processes.

/// Throws if sigma_eps is not symmetric PD or the AR companion matrix has
/// spectral radius >= 1.
void validate_model(const VarmaModel& model);

/// The evaluation processes:
///   WhiteNoise - iid N(0, Sigma), Sigma tridiagonal (0.7 diag, 0.3 off)
///   Var1       - X_t = A X_{t-1} + e_t, A banded (0.5, -0.3, 0.2), Sigma = I
///   Varma22    - A1 = 0.4 I, A2 = 0.2 I, MA blocks 1.5(I5+J5), 0.75(I5+J5)
///   Var1Block  - A block diagonal of 5x5 (0.5 diag, 0.2 superdiag), Sigma = I/2
/// Block families require p divisible by 5.
VarmaModel build_dgp(const DgpSpec& spec);

/// Simulates n observations after a discarded burn-in, with Gaussian
/// innovations; deterministic given the seed.
TimeSeriesPanel simulate_path(const VarmaModel& model, int n, std::uint64_t seed);

/// f(w) = (1/2pi) A^{-1}(e^{-iw}) B(e^{-iw}) Sigma B^+(e^{-iw}) A^{-+}(e^{-iw})
/// with A(z) = I - sum A_t z^t and B(z) = I + sum B_t z^t.
CMatrix true_spectral_density(const VarmaModel& model, double omega);

/// Inverse of the true spectral density.
CMatrix true_precision(const VarmaModel& model, double omega);

/// Draws from the complex normal N_C(mu, Sigma) via its real 2p-dimensional
/// representation with covariance (1/2)[[S1, -S2], [S2, S1]]. One draw per
/// row of the result.
CMatrix sample_complex_normal(const CVector& mu, const CMatrix& sigma, int count,
                              std::uint64_t seed);

}  // namespace specprec
