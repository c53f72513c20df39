#include "bsl/blocked_linalg.hpp"

#include <sstream>

#include "bsl/errors.hpp"

namespace bsl {

namespace {

constexpr double kAtomNormTol = 1e-10;
constexpr double kRankTol = 1e-10;  // relative to the largest singular value

std::string format_blocks(std::span<const int> blocks) {
  std::ostringstream oss;
  oss << "{";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) oss << ", ";
    oss << blocks[i];
  }
  oss << "}";
  return oss.str();
}

}  // namespace

BlockedDictionary::BlockedDictionary(Eigen::MatrixXd entries, int block_size)
    : entries_(std::move(entries)), block_size_(block_size) {
  if (entries_.size() == 0) throw ArgumentError("dictionary: empty matrix");
  if (block_size_ < 1) throw ArgumentError("dictionary: block size must be positive");
  const auto n = entries_.cols();
  if (n % block_size_ != 0) {
    std::ostringstream oss;
    oss << "dictionary: N = " << n << " is not a multiple of block size d = " << block_size_;
    throw ArgumentError(oss.str());
  }
  num_blocks_ = static_cast<int>(n / block_size_);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(entries_.col(j).norm() - 1.0) > kAtomNormTol) {
      std::ostringstream oss;
      oss << "dictionary: atom " << (j + 1) << " has norm " << entries_.col(j).norm()
          << " (atoms must be unit-norm)";
      throw ArgumentError(oss.str());
    }
  }
}

BlockedDictionary::ConstColsBlock BlockedDictionary::block(int i) const {
  if (i < 1 || i > num_blocks_) {
    std::ostringstream oss;
    oss << "dictionary: block index " << i << " out of range [1, " << num_blocks_ << "]";
    throw ArgumentError(oss.str());
  }
  return entries_.middleCols(static_cast<Eigen::Index>(i - 1) * block_size_, block_size_);
}

BlockSparseVector::BlockSparseVector(Eigen::VectorXd values, int block_size)
    : values_(std::move(values)), block_size_(block_size) {
  if (block_size_ < 1) throw ArgumentError("block-sparse vector: block size must be positive");
  if (values_.size() % block_size_ != 0) {
    std::ostringstream oss;
    oss << "block-sparse vector: length " << values_.size()
        << " is not a multiple of block size " << block_size_;
    throw ArgumentError(oss.str());
  }
  num_blocks_ = static_cast<int>(values_.size() / block_size_);
}

Eigen::VectorBlock<const Eigen::VectorXd> BlockSparseVector::block(int i) const {
  if (i < 1 || i > num_blocks_) {
    std::ostringstream oss;
    oss << "block-sparse vector: block index " << i << " out of range [1, " << num_blocks_ << "]";
    throw ArgumentError(oss.str());
  }
  return values_.segment(static_cast<Eigen::Index>(i - 1) * block_size_, block_size_);
}

std::vector<int> BlockSparseVector::support() const {
  std::vector<int> out;
  for (int i = 1; i <= num_blocks_; ++i) {
    const auto b = block(i);
    bool nonzero = false;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (b[j] != 0.0) {
        nonzero = true;
        break;
      }
    }
    if (nonzero) out.push_back(i);
  }
  return out;
}

Eigen::MatrixXd block_columns(const BlockedDictionary& dict, int block_index) {
  return dict.block(block_index);
}

Eigen::MatrixXd subdictionary(const BlockedDictionary& dict, std::span<const int> blocks) {
  if (blocks.empty()) throw ArgumentError("subdictionary: empty block-index set");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] < 1 || blocks[i] > dict.num_blocks()) {
      std::ostringstream oss;
      oss << "subdictionary: block index " << blocks[i] << " out of range [1, "
          << dict.num_blocks() << "]";
      throw ArgumentError(oss.str());
    }
    if (i > 0 && blocks[i] <= blocks[i - 1]) {
      throw ArgumentError("subdictionary: block indices must be sorted ascending without "
                          "duplicates, got " + format_blocks(blocks));
    }
  }
  const int d = dict.block_size();
  Eigen::MatrixXd out(dict.rows(), static_cast<Eigen::Index>(blocks.size()) * d);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.middleCols(static_cast<Eigen::Index>(i) * d, d) = dict.block(blocks[i]);
  }
  return out;
}

BlockSparseVector restricted_least_squares(const BlockedDictionary& dict,
                                           std::span<const int> blocks,
                                           const Eigen::VectorXd& y) {
  if (y.size() != dict.rows()) {
    std::ostringstream oss;
    oss << "restricted least squares: observation length " << y.size()
        << " does not match L = " << dict.rows();
    throw ArgumentError(oss.str());
  }
  const Eigen::MatrixXd sub = subdictionary(dict, blocks);
  const Eigen::Index p = sub.cols();
  if (p > sub.rows()) {
    std::ostringstream oss;
    oss << "restricted least squares: " << blocks.size() << " blocks of size "
        << dict.block_size() << " exceed the measurement count L = " << dict.rows();
    throw ArgumentError(oss.str());
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(sub);
  // The singular values of the R factor equal those of the subdictionary.
  const Eigen::MatrixXd r_factor =
      qr.matrixQR().topRows(p).template triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(r_factor);
  const auto& sv = svd.singularValues();
  if (sv(p - 1) < kRankTol * sv(0)) {
    throw SingularityError("restricted least squares: rank-deficient subdictionary for blocks " +
                           format_blocks(blocks));
  }

  const Eigen::VectorXd coeffs = qr.solve(y);
  Eigen::VectorXd full = Eigen::VectorXd::Zero(dict.cols());
  const int d = dict.block_size();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    full.segment(static_cast<Eigen::Index>(blocks[i] - 1) * d, d) =
        coeffs.segment(static_cast<Eigen::Index>(i) * d, d);
  }
  return BlockSparseVector(std::move(full), d);
}

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) throw ArgumentError("spectral norm: empty matrix");
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace bsl
