#pragma once

#include <vector>

#include "specprec/types.hpp"

namespace specprec {

// Frequency-domain estimators. Fourier frequencies are w_j = 2*pi*j/n with j
// running over the integer grid F_n = {-[(n-1)/2], ..., [n/2]} of size n.

/// The index set F_n, ascending. Throws for n < 2.
std::vector<int> fourier_grid(int n);

/// Reduces an arbitrary integer index to its representative in F_n.
int wrap_frequency_index(int n, int j);

bool in_fourier_grid(int n, int j);

/// Subtracts the column means. DFTs at w != 0 are unaffected, the j = 0 term
/// is not, so estimation entry points center by default.
TimeSeriesPanel center_columns(const TimeSeriesPanel& panel);

struct SpectralOptions {
  bool center = true;
};

/// DFT of the raw panel at Fourier index j:
///   d_j = n^{-1/2} sum_{t=1..n} X_t exp(-i t w_j).
/// No centering is applied here. Throws if j is outside F_n.
CVector dft(const TimeSeriesPanel& panel, int j);

/// Rank-one periodogram d d^+ of a DFT vector.
template <class Derived>
CMatrix periodogram(const Eigen::MatrixBase<Derived>& d) {
  return d * d.adjoint();
}

/// Smoothed periodogram f^(w_j) = (2*pi*(2m+1))^{-1} sum_{|k|<=m} I(w_{j+k}),
/// with j+k wrapped modulo n into F_n. Requires 2m+1 <= n.
SpectralEstimate averaged_periodogram(const TimeSeriesPanel& panel, int j, int m,
                                      const SpectralOptions& opts = {});

/// (2m+1) x p matrix whose rows are d_{j-m}, ..., d_{j+m} (wrapped). Its
/// scaled Gram Z^+ Z / (2m+1) equals 2*pi times the averaged periodogram.
CMatrix dft_data_matrix(const TimeSeriesPanel& panel, int j, int m,
                        const SpectralOptions& opts = {});

}  // namespace specprec
