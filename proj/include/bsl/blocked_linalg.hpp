#ifndef BSL_BLOCKED_LINALG_HPP
#define BSL_BLOCKED_LINALG_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace bsl {

/// An L x N dictionary whose N = M*d columns are partitioned into M blocks of
/// d consecutive unit-norm atoms. Block indices are 1-based throughout the
/// public interface.
class BlockedDictionary {
 public:
  BlockedDictionary(Eigen::MatrixXd entries, int block_size);

  const Eigen::MatrixXd& entries() const { return entries_; }
  int rows() const { return static_cast<int>(entries_.rows()); }        // L
  int cols() const { return static_cast<int>(entries_.cols()); }        // N
  int block_size() const { return block_size_; }                        // d
  int num_blocks() const { return num_blocks_; }                        // M

  // View of the columns of block i (1 <= i <= M), no copy.
  using ConstColsBlock =
      Eigen::Block<const Eigen::MatrixXd, Eigen::Dynamic, Eigen::Dynamic, true>;
  ConstColsBlock block(int i) const;

  // Reinterpret the same atoms with block size 1 (M' = N). Used to run the
  // scalar algorithms on a blocked problem.
  BlockedDictionary reblocked_scalar() const { return BlockedDictionary(entries_, 1); }

 private:
  Eigen::MatrixXd entries_;
  int block_size_;
  int num_blocks_;
};

/// Length-N vector with the same block partition as a dictionary; the support
/// is the set of blocks with at least one exactly-nonzero entry.
class BlockSparseVector {
 public:
  BlockSparseVector(Eigen::VectorXd values, int block_size);

  const Eigen::VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  int block_size() const { return block_size_; }
  int num_blocks() const { return num_blocks_; }

  Eigen::VectorBlock<const Eigen::VectorXd> block(int i) const;
  double block_norm(int i) const { return block(i).norm(); }

  // 1-based indices of nonzero blocks (exact-zero test), ascending.
  std::vector<int> support() const;

 private:
  Eigen::VectorXd values_;
  int block_size_;
  int num_blocks_;
};

// Columns (i-1)d+1 ... id of D, as a copy.
Eigen::MatrixXd block_columns(const BlockedDictionary& dict, int block_index);

// Horizontal concatenation of the blocks indexed by `blocks` (sorted
// ascending, no duplicates, all in [1, M]).
Eigen::MatrixXd subdictionary(const BlockedDictionary& dict, std::span<const int> blocks);

// argmin over vectors supported on `blocks` of || y - D v ||_2, solved by a
// Householder QR factorization of the subdictionary. Throws SingularityError
// when the smallest singular value of the subdictionary is below 1e-10 times
// the largest.
BlockSparseVector restricted_least_squares(const BlockedDictionary& dict,
                                           std::span<const int> blocks,
                                           const Eigen::VectorXd& y);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& a);

}  // namespace bsl

#endif  // BSL_BLOCKED_LINALG_HPP
