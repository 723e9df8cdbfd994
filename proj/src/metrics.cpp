#include "specprec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specprec {

double rmse(const CMatrix& theta_hat, const CMatrix& theta_true) {
  if (theta_hat.rows() != theta_true.rows() || theta_hat.cols() != theta_true.cols()) {
    throw std::invalid_argument("rmse: size mismatch");
  }
  const double denom = theta_true.squaredNorm();
  if (!(denom > 0.0)) throw std::invalid_argument("rmse: truth must be nonzero");
  return (theta_hat - theta_true).squaredNorm() / denom;
}

BoolArray support_of(const CMatrix& theta, double tol) {
  return theta.cwiseAbs().array() > tol;
}

SupportScores support_scores(const BoolArray& predicted, const BoolArray& truth) {
  if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols()) {
    throw std::invalid_argument("support_scores: size mismatch");
  }
  const Eigen::Index p = truth.rows();
  long tp = 0, tn = 0, fp = 0, fn = 0;
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < truth.cols(); ++l) {
      if (predicted(k, l)) {
        truth(k, l) ? ++tp : ++fp;
      } else {
        truth(k, l) ? ++fn : ++tn;
      }
    }
  }
  SupportScores s;
  if (tp + fp > 0) s.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  s.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  s.accuracy = static_cast<double>(tp + tn) / static_cast<double>(truth.size());
  return s;
}

SupportScores support_scores(const CMatrix& theta_hat, const CMatrix& theta_true, double tol) {
  return support_scores(support_of(theta_hat, tol), support_of(theta_true, tol));
}

RocCurve roc_curve(const std::vector<BoolArray>& supports, const BoolArray& truth) {
  if (supports.size() < 2) throw std::invalid_argument("roc_curve: need at least two supports");
  const Eigen::Index p = truth.rows();
  if (truth.cols() != p) throw std::invalid_argument("roc_curve: truth must be square");

  long positives = 0, negatives = 0;
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = k + 1; l < p; ++l) {
      truth(k, l) ? ++positives : ++negatives;
    }
  }
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("roc_curve: true off-diagonal support empty or full");
  }

  RocCurve curve;
  curve.points.reserve(supports.size());
  for (const BoolArray& s : supports) {
    if (s.rows() != p || s.cols() != p) throw std::invalid_argument("roc_curve: size mismatch");
    long tp = 0, fp = 0;
    for (Eigen::Index k = 0; k < p; ++k) {
      for (Eigen::Index l = k + 1; l < p; ++l) {
        if (s(k, l)) truth(k, l) ? ++tp : ++fp;
      }
    }
    curve.points.emplace_back(static_cast<double>(fp) / static_cast<double>(negatives),
                              static_cast<double>(tp) / static_cast<double>(positives));
  }

  std::vector<std::pair<double, double>> pts = curve.points;
  pts.emplace_back(0.0, 0.0);
  pts.emplace_back(1.0, 1.0);
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2.0;
  }
  curve.auroc = area;
  return curve;
}

double auroc(const std::vector<BoolArray>& supports, const CMatrix& theta_true, double tol) {
  return roc_curve(supports, support_of(theta_true, tol)).auroc;
}

}  // namespace specprec
