#include "bsl/coherence.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <sstream>

#include "bsl/errors.hpp"
#include "bsl/parallel.hpp"
#include "bsl/rng.hpp"

namespace bsl {

namespace {

struct StripMaxima {
  double mu_cross = 0.0;   // off-block atom pairs
  double mu_block = 0.0;   // per-pair cross-Gram spectral norm / d
};

// Scans the Gram strips for blocks [strip_begin, strip_end) against all
// earlier blocks; every unordered pair is visited exactly once across strips.
StripMaxima scan_strip(const BlockedDictionary& dict, int strip_begin, int strip_end) {
  const int d = dict.block_size();
  const Eigen::Index cols_end = static_cast<Eigen::Index>(strip_end) * d;
  const Eigen::MatrixXd gram =
      dict.entries().leftCols(cols_end).transpose() *
      dict.entries().middleCols(static_cast<Eigen::Index>(strip_begin) * d,
                                static_cast<Eigen::Index>(strip_end - strip_begin) * d);

  StripMaxima out;
  for (int j = strip_begin; j < strip_end; ++j) {
    const Eigen::Index col0 = static_cast<Eigen::Index>(j - strip_begin) * d;
    for (int i = 0; i < j; ++i) {
      const auto cross = gram.block(static_cast<Eigen::Index>(i) * d, col0, d, d);
      out.mu_cross = std::max(out.mu_cross, cross.cwiseAbs().maxCoeff());
      if (d == 1) {
        out.mu_block = std::max(out.mu_block, std::abs(cross(0, 0)));
      } else {
        out.mu_block = std::max(out.mu_block, spectral_norm(cross) / d);
      }
    }
  }
  return out;
}

double subgram_inverse_norm(const Eigen::MatrixXd& sub) {
  const Eigen::MatrixXd gram = sub.transpose() * sub;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double lambda_min = eig.eigenvalues()(0);
  if (lambda_min <= 0.0) {
    throw SingularityError("gram bound report: sampled subdictionary is numerically singular");
  }
  return 1.0 / lambda_min;
}

}  // namespace

double sub_coherence(const BlockedDictionary& dict) {
  const int d = dict.block_size();
  if (d == 1) return 0.0;  // empty intra-block pair set
  double nu = 0.0;
  for (int i = 1; i <= dict.num_blocks(); ++i) {
    const Eigen::MatrixXd gram = dict.block(i).transpose() * dict.block(i);
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        nu = std::max(nu, std::abs(gram(a, b)));
      }
    }
  }
  return nu;
}

CoherenceProfile coherence_profile(const BlockedDictionary& dict, int threads) {
  const int d = dict.block_size();
  const int m = dict.num_blocks();

  // Strips of whole blocks, sized so each Gram panel stays modest.
  const int blocks_per_strip = std::max(1, 512 / d);
  const int num_strips = (m + blocks_per_strip - 1) / blocks_per_strip;
  std::vector<StripMaxima> partial(static_cast<std::size_t>(num_strips));
  parallel_for(static_cast<std::size_t>(num_strips), threads, [&](std::size_t s) {
    const int begin = static_cast<int>(s) * blocks_per_strip;
    const int end = std::min(m, begin + blocks_per_strip);
    partial[s] = scan_strip(dict, begin, end);
  });

  CoherenceProfile profile;
  profile.d = d;
  profile.M = m;
  profile.L = dict.rows();
  profile.nu = sub_coherence(dict);
  double mu_cross = 0.0;
  for (const auto& p : partial) {
    mu_cross = std::max(mu_cross, p.mu_cross);
    profile.mu_block = std::max(profile.mu_block, p.mu_block);
  }
  profile.mu = std::max(mu_cross, profile.nu);
  return profile;
}

double coherence(const BlockedDictionary& dict, int threads) {
  if (dict.cols() < 2) {
    throw ArgumentError("coherence: needs at least two atoms");
  }
  return coherence_profile(dict, threads).mu;
}

double block_coherence(const BlockedDictionary& dict, int threads) {
  if (dict.num_blocks() < 2) {
    throw ArgumentError("block coherence: needs at least two blocks");
  }
  return coherence_profile(dict, threads).mu_block;
}

GramBoundReport gram_bound_report(const BlockedDictionary& dict, int k, int trials,
                                  std::uint64_t seed) {
  const int d = dict.block_size();
  const int m = dict.num_blocks();
  if (k < 1 || k > m) throw ArgumentError("gram bound report: k out of range");
  if (static_cast<long long>(k) * d > dict.rows()) {
    throw ArgumentError("gram bound report: k*d exceeds the measurement count");
  }
  if (trials < 1) throw ArgumentError("gram bound report: trials must be positive");

  const CoherenceProfile profile = coherence_profile(dict);
  const double diag_bound = 1.0 + (d - 1) * profile.nu;
  const double diag_inv_denom = 1.0 - (d - 1) * profile.nu;
  const double subgram_denom = 1.0 - (d - 1) * profile.nu - (k - 1) * d * profile.mu_block;

  GramBoundReport report;
  report.k = k;
  report.trials = trials;
  report.diag_inverse_applicable = diag_inv_denom > 0.0;
  report.subgram_inverse_applicable = subgram_denom > 0.0;

  constexpr double inf = std::numeric_limits<double>::infinity();
  double cross_slack = inf, diag_slack = inf, diag_inv_slack = inf, subgram_slack = inf;

  RandomStream rng(derive_stream(seed, "gram-bound-report"));
  for (int t = 0; t < trials; ++t) {
    const int size = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    const std::vector<int> index_set = rng.sample_subset(m, size);

    for (std::size_t a = 0; a < index_set.size(); ++a) {
      const auto block_a = dict.block(index_set[a]);
      const Eigen::MatrixXd self_gram = block_a.transpose() * block_a;
      diag_slack = std::min(diag_slack, diag_bound - spectral_norm(self_gram));
      if (report.diag_inverse_applicable) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(self_gram);
        diag_inv_slack =
            std::min(diag_inv_slack, 1.0 / diag_inv_denom - 1.0 / eig.eigenvalues()(0));
      }
      for (std::size_t b = a + 1; b < index_set.size(); ++b) {
        const Eigen::MatrixXd cross = block_a.transpose() * dict.block(index_set[b]);
        cross_slack = std::min(cross_slack, d * profile.mu_block - spectral_norm(cross));
      }
    }
    if (report.subgram_inverse_applicable) {
      const Eigen::MatrixXd sub = subdictionary(dict, index_set);
      subgram_slack =
          std::min(subgram_slack, 1.0 / subgram_denom - subgram_inverse_norm(sub));
    }
  }

  // Slacks never exercised (e.g. no cross pairs when k = 1) count as 0.
  const auto finite_or_zero = [](double v) { return v == inf ? 0.0 : v; };
  report.cross_norm_slack = finite_or_zero(cross_slack);
  report.diag_norm_slack = finite_or_zero(diag_slack);
  report.diag_inverse_slack = report.diag_inverse_applicable ? finite_or_zero(diag_inv_slack) : 0.0;
  report.subgram_inverse_slack =
      report.subgram_inverse_applicable ? finite_or_zero(subgram_slack) : 0.0;
  return report;
}

}  // namespace bsl
