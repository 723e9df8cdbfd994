#pragma once

#include <vector>

#include "specprec/types.hpp"

namespace specprec {

// Evaluation metrics for precision estimates and support recovery.

/// Relative squared error ||est - truth||_F^2 / ||truth||_F^2.
double rmse(const CMatrix& theta_hat, const CMatrix& theta_true);

/// Entries with modulus above tol count as nonzero.
BoolArray support_of(const CMatrix& theta, double tol = 1e-8);

/// Precision / recall / accuracy of the estimated support against the truth,
/// counted over the full p x p index set (diagonal included). Precision is
/// absent when nothing is predicted positive.
SupportScores support_scores(const CMatrix& theta_hat, const CMatrix& theta_true,
                             double tol = 1e-8);
SupportScores support_scores(const BoolArray& predicted, const BoolArray& truth);

/// ROC over a sweep of supports (lambda descending), scored on off-diagonal
/// unordered pairs. The curve is anchored at (0,0) and (1,1) and integrated
/// by the trapezoid rule after sorting by FPR. Throws if the true
/// off-diagonal support is empty or full (no negatives or no positives).
RocCurve roc_curve(const std::vector<BoolArray>& supports, const BoolArray& truth);

double auroc(const std::vector<BoolArray>& supports, const CMatrix& theta_true,
             double tol = 1e-8);

}  // namespace specprec
