#include "bsl/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bsl/errors.hpp"

namespace bsl {

namespace {

void check_sparsity_arg(const BlockedDictionary& dict, const Eigen::VectorXd& y, int k) {
  if (k < 1 || k > dict.num_blocks()) {
    std::ostringstream oss;
    oss << "estimator: k = " << k << " out of range [1, " << dict.num_blocks() << "]";
    throw ArgumentError(oss.str());
  }
  if (static_cast<long long>(k) * dict.block_size() > dict.rows()) {
    std::ostringstream oss;
    oss << "estimator: k*d = " << static_cast<long long>(k) * dict.block_size()
        << " exceeds the measurement count L = " << dict.rows();
    throw ArgumentError(oss.str());
  }
  if (y.size() != dict.rows()) {
    throw ArgumentError("estimator: observation length does not match the dictionary");
  }
}

EstimateResult finish(const BlockedDictionary& dict, const Eigen::VectorXd& y,
                      std::vector<int> selection_order, int iterations) {
  std::vector<int> sorted = selection_order;
  std::sort(sorted.begin(), sorted.end());
  BlockSparseVector estimate = restricted_least_squares(dict, sorted, y);
  const double residual_norm = (y - dict.entries() * estimate.values()).norm();
  return EstimateResult{std::move(estimate), std::move(selection_order), residual_norm,
                        iterations};
}

double binomial_guarded(int m, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c *= static_cast<double>(m - k + i) / static_cast<double>(i);
    if (c > 1e15) return c;
  }
  return c;
}

}  // namespace

Eigen::VectorXd block_correlations(const BlockedDictionary& dict, const Eigen::VectorXd& r) {
  const Eigen::VectorXd atom_corr = dict.entries().transpose() * r;
  const int d = dict.block_size();
  Eigen::VectorXd out(dict.num_blocks());
  for (int i = 0; i < dict.num_blocks(); ++i) {
    out(i) = atom_corr.segment(static_cast<Eigen::Index>(i) * d, d).norm();
  }
  return out;
}

EstimateResult bth(const BlockedDictionary& dict, const Eigen::VectorXd& y, int k) {
  check_sparsity_arg(dict, y, k);
  const Eigen::VectorXd corr = block_correlations(dict, y);

  // Rank blocks by correlation, ties broken by the lower block index.
  std::vector<int> order(static_cast<std::size_t>(dict.num_blocks()));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return corr(a - 1) > corr(b - 1); });
  order.resize(static_cast<std::size_t>(k));
  return finish(dict, y, std::move(order), 1);
}

EstimateResult bomp(const BlockedDictionary& dict, const Eigen::VectorXd& y, int k) {
  check_sparsity_arg(dict, y, k);

  std::vector<int> selected;
  selected.reserve(static_cast<std::size_t>(k));
  std::vector<bool> used(static_cast<std::size_t>(dict.num_blocks()) + 1, false);
  Eigen::VectorXd residual = y;
  BlockSparseVector estimate(Eigen::VectorXd::Zero(dict.cols()), dict.block_size());

  for (int step = 0; step < k; ++step) {
    const Eigen::VectorXd corr = block_correlations(dict, residual);
    int best = -1;
    double best_corr = -1.0;
    for (int i = 1; i <= dict.num_blocks(); ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      if (corr(i - 1) > best_corr) {
        best_corr = corr(i - 1);
        best = i;
      }
    }
    selected.push_back(best);
    used[static_cast<std::size_t>(best)] = true;

    std::vector<int> sorted = selected;
    std::sort(sorted.begin(), sorted.end());
    estimate = restricted_least_squares(dict, sorted, y);
    residual = y - dict.entries() * estimate.values();
  }

  return EstimateResult{std::move(estimate), std::move(selected), residual.norm(), k};
}

EstimateResult oracle(const BlockedDictionary& dict, const Eigen::VectorXd& y,
                      std::span<const int> support) {
  if (support.empty()) throw ArgumentError("oracle: empty support");
  std::vector<int> sorted(support.begin(), support.end());
  std::sort(sorted.begin(), sorted.end());
  BlockSparseVector estimate = restricted_least_squares(dict, sorted, y);
  const double residual_norm = (y - dict.entries() * estimate.values()).norm();
  return EstimateResult{std::move(estimate), std::move(sorted), residual_norm, 1};
}

EstimateResult exhaustive_ml(const BlockedDictionary& dict, const Eigen::VectorXd& y, int k) {
  check_sparsity_arg(dict, y, k);
  const int m = dict.num_blocks();
  if (binomial_guarded(m, k) > 1e6) {
    throw ArgumentError("exhaustive ML: C(M, k) exceeds 1e6 candidate supports; "
                        "this estimator is intended for small test instances");
  }

  // Lexicographic enumeration of size-k supports; strict improvement keeps the
  // lexicographically smallest support on residual ties.
  std::vector<int> candidate(static_cast<std::size_t>(k));
  std::iota(candidate.begin(), candidate.end(), 1);

  std::vector<int> best_support;
  double best_residual = std::numeric_limits<double>::infinity();
  int examined = 0;
  for (;;) {
    ++examined;
    const BlockSparseVector est = restricted_least_squares(dict, candidate, y);
    const double res = (y - dict.entries() * est.values()).norm();
    if (res < best_residual) {
      best_residual = res;
      best_support = candidate;
    }
    // next combination
    int pos = k - 1;
    while (pos >= 0 && candidate[static_cast<std::size_t>(pos)] == m - (k - 1 - pos)) --pos;
    if (pos < 0) break;
    ++candidate[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) {
      candidate[static_cast<std::size_t>(j)] = candidate[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  BlockSparseVector estimate = restricted_least_squares(dict, best_support, y);
  const double residual_norm = (y - dict.entries() * estimate.values()).norm();
  return EstimateResult{std::move(estimate), std::move(best_support), residual_norm, examined};
}

}  // namespace bsl
