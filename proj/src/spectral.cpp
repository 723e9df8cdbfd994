#include "specprec/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specprec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CVector dft_of_values(const RMatrix& values, int j) {
  const Eigen::Index n = values.rows();
  const double omega = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
  CVector d = CVector::Zero(values.cols());
  for (Eigen::Index t = 0; t < n; ++t) {
    // t runs from 1 in the defining sum
    const Complex w = std::polar(1.0, -omega * static_cast<double>(t + 1));
    d += w * values.row(t).transpose().cast<Complex>();
  }
  return d / std::sqrt(static_cast<double>(n));
}

void check_grid_membership(int n, int j, const char* who) {
  if (n < 2) throw std::invalid_argument(std::string(who) + ": need n >= 2");
  if (!in_fourier_grid(n, j)) {
    throw std::invalid_argument(std::string(who) + ": frequency index outside F_n");
  }
}

void check_span(int n, int m, const char* who) {
  if (m < 0) throw std::invalid_argument(std::string(who) + ": m must be >= 0");
  if (2 * m + 1 > n) throw std::invalid_argument(std::string(who) + ": need 2m+1 <= n");
}

}  // namespace

std::vector<int> fourier_grid(int n) {
  if (n < 2) throw std::invalid_argument("fourier_grid: need n >= 2");
  const int lo = -((n - 1) / 2);
  const int hi = n / 2;
  std::vector<int> grid;
  grid.reserve(n);
  for (int j = lo; j <= hi; ++j) grid.push_back(j);
  return grid;
}

int wrap_frequency_index(int n, int j) {
  int r = j % n;
  if (r < 0) r += n;          // now in [0, n)
  if (r > n / 2) r -= n;      // fold into F_n
  return r;
}

bool in_fourier_grid(int n, int j) {
  return j >= -((n - 1) / 2) && j <= n / 2;
}

TimeSeriesPanel center_columns(const TimeSeriesPanel& panel) {
  TimeSeriesPanel out = panel;
  out.values.rowwise() -= panel.values.colwise().mean();
  return out;
}

CVector dft(const TimeSeriesPanel& panel, int j) {
  check_grid_membership(static_cast<int>(panel.n()), j, "dft");
  return dft_of_values(panel.values, j);
}

SpectralEstimate averaged_periodogram(const TimeSeriesPanel& panel, int j, int m,
                                      const SpectralOptions& opts) {
  const int n = static_cast<int>(panel.n());
  check_grid_membership(n, j, "averaged_periodogram");
  check_span(n, m, "averaged_periodogram");

  const RMatrix values =
      opts.center ? center_columns(panel).values : panel.values;
  CMatrix acc = CMatrix::Zero(panel.p(), panel.p());
  for (int k = -m; k <= m; ++k) {
    const CVector d = dft_of_values(values, wrap_frequency_index(n, j + k));
    acc += periodogram(d);
  }
  acc /= kTwoPi * static_cast<double>(2 * m + 1);
  acc = ((acc + acc.adjoint()) / 2.0).eval();

  SpectralEstimate est;
  est.frequency_index = j;
  est.m = m;
  est.fhat = std::move(acc);
  return est;
}

CMatrix dft_data_matrix(const TimeSeriesPanel& panel, int j, int m,
                        const SpectralOptions& opts) {
  const int n = static_cast<int>(panel.n());
  check_grid_membership(n, j, "dft_data_matrix");
  check_span(n, m, "dft_data_matrix");

  const RMatrix values =
      opts.center ? center_columns(panel).values : panel.values;
  CMatrix Z(2 * m + 1, panel.p());
  for (int k = -m; k <= m; ++k) {
    Z.row(k + m) = dft_of_values(values, wrap_frequency_index(n, j + k)).transpose();
  }
  return Z;
}

}  // namespace specprec
