#ifndef BSL_ESTIMATORS_HPP
#define BSL_ESTIMATORS_HPP

#include <span>
#include <vector>

#include "bsl/blocked_linalg.hpp"

namespace bsl {

/// Output of a recovery algorithm. selected_support lists the chosen blocks
/// (1-based) in selection order for BOMP, correlation-rank order for BTH and
/// ascending order for the oracle/ML estimators. The estimate is zero outside
/// the selected blocks. iterations counts greedy rounds (BOMP), 1 for the
/// one-shot algorithms, and candidate supports examined for exhaustive ML.
struct EstimateResult {
  BlockSparseVector estimate;
  std::vector<int> selected_support;
  double residual_norm = 0.0;
  int iterations = 0;
};

// Block thresholding: pick the k blocks most correlated with y (ties -> lowest
// block index), then least squares on that support.
EstimateResult bth(const BlockedDictionary& dict, const Eigen::VectorXd& y, int k);

// Block orthogonal matching pursuit: k rounds of correlate / select / refit on
// the residual. A block is never selected twice.
EstimateResult bomp(const BlockedDictionary& dict, const Eigen::VectorXd& y, int k);

// Least squares restricted to a known support (benchmark use).
EstimateResult oracle(const BlockedDictionary& dict, const Eigen::VectorXd& y,
                      std::span<const int> support);

// Minimum-residual solution over all size-k block supports (ties -> smallest
// support lexicographically). Guarded to C(M, k) <= 1e6 candidates.
EstimateResult exhaustive_ml(const BlockedDictionary& dict, const Eigen::VectorXd& y, int k);

// ||D[i]^T r||_2 for every block, in one pass.
Eigen::VectorXd block_correlations(const BlockedDictionary& dict, const Eigen::VectorXd& r);

}  // namespace bsl

#endif  // BSL_ESTIMATORS_HPP
