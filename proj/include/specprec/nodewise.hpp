#pragma once

#include <vector>

#include "specprec/classo.hpp"
#include "specprec/types.hpp"

namespace specprec {

// Neighborhood selection on DFT data: each column of Z is regressed on the
// others with a complex lasso, and the nonzero pattern of the coefficients
// is read off as the candidate support of the corresponding precision row.
// Node fits may disagree across the diagonal, so the pattern is symmetrized
// by the AND or OR rule.

/// p independent node regressions at a shared penalty (or one per node).
/// Columns are scaled to ||.|| = sqrt(N) internally; returned coefficients
/// are on the original scale. The support diagonal is fixed to true.
NodewiseResult nodewise_regression(const CMatrix& Z, const std::vector<double>& lambda_per_node,
                                   SymmetrizeRule rule = SymmetrizeRule::Or,
                                   const LassoOptions& opts = {});
NodewiseResult nodewise_regression(const CMatrix& Z, double lambda,
                                   SymmetrizeRule rule = SymmetrizeRule::Or,
                                   const LassoOptions& opts = {});

/// Per-node complex OLS through the normal equations; needs N > p-1 and full
/// column rank. Column k of the result holds the coefficients for node k.
CMatrix nodewise_ols(const CMatrix& Z);

/// Smallest shared lambda at which every node fit is empty.
double nodewise_lambda_max(const CMatrix& Z);

/// Symmetrized supports along a strictly decreasing shared lambda grid, each
/// node warm-started along the path.
std::vector<BoolArray> nodewise_support_path(const CMatrix& Z, const std::vector<double>& lambdas,
                                             SymmetrizeRule rule = SymmetrizeRule::Or,
                                             const LassoOptions& opts = {});

}  // namespace specprec
