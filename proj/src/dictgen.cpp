#include "bsl/dictgen.hpp"

#include <cmath>
#include <sstream>

#include "bsl/errors.hpp"
#include "bsl/rng.hpp"

namespace bsl {

namespace {

constexpr double kOrthonormalityTol = 1e-10;

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns false if
// a pivot collapses (numerically dependent columns).
bool orthonormalize_in_place(Eigen::Ref<Eigen::MatrixXd> block) {
  const Eigen::Index d = block.cols();
  for (Eigen::Index j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        block.col(j) -= block.col(i).dot(block.col(j)) * block.col(i);
      }
    }
    const double norm = block.col(j).norm();
    if (norm < 1e-12) return false;
    block.col(j) /= norm;
  }
  return true;
}

void fill_gaussian(Eigen::Ref<Eigen::MatrixXd> block, RandomStream& rng) {
  for (Eigen::Index j = 0; j < block.cols(); ++j) {
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      block(i, j) = rng.next_gaussian();
    }
  }
}

Eigen::VectorXd gaussian_vector(Eigen::Index n, RandomStream& rng) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.next_gaussian();
  return v;
}

void fill_block_shape(Eigen::Ref<Eigen::VectorXd> block, double norm, SignalProfile profile,
                      RandomStream& rng) {
  const Eigen::Index d = block.size();
  switch (profile) {
    case SignalProfile::spike: {
      const auto pos = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(d)));
      const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
      block.setZero();
      block(pos) = sign * norm;
      break;
    }
    case SignalProfile::flat:
      block.setConstant(norm / std::sqrt(static_cast<double>(d)));
      break;
    case SignalProfile::mixed:
      fill_block_shape(block, norm,
                       rng.next_double() < 0.5 ? SignalProfile::spike : SignalProfile::flat, rng);
      break;
    case SignalProfile::random: {
      Eigen::VectorXd dir = gaussian_vector(d, rng);
      double len = dir.norm();
      while (len < 1e-300) {  // unreachable in practice
        dir = gaussian_vector(d, rng);
        len = dir.norm();
      }
      block = dir * (norm / len);
      break;
    }
  }
}

}  // namespace

SignalProfile signal_profile_from_string(const std::string& name) {
  if (name == "spike") return SignalProfile::spike;
  if (name == "flat") return SignalProfile::flat;
  if (name == "mixed") return SignalProfile::mixed;
  if (name == "random") return SignalProfile::random;
  throw ArgumentError("unknown signal profile: " + name);
}

std::string to_string(SignalProfile profile) {
  switch (profile) {
    case SignalProfile::spike: return "spike";
    case SignalProfile::flat: return "flat";
    case SignalProfile::mixed: return "mixed";
    case SignalProfile::random: return "random";
  }
  return "?";
}

NoiseModel noise_model_from_string(const std::string& name) {
  if (name == "gaussian" || name == "gauss") return NoiseModel::gaussian;
  if (name == "adversarial_bounded" || name == "adv") return NoiseModel::adversarial_bounded;
  throw ArgumentError("unknown noise model: " + name);
}

std::string to_string(NoiseModel model) {
  return model == NoiseModel::gaussian ? "gaussian" : "adversarial_bounded";
}

BlockedDictionary generate_dictionary(int L, int M, int d, std::uint64_t seed) {
  if (L < 1 || M < 1 || d < 1) {
    throw ArgumentError("generate dictionary: dimensions must be positive");
  }
  if (d > L) {
    std::ostringstream oss;
    oss << "generate dictionary: block size d = " << d << " exceeds L = " << L
        << " (blocks cannot be orthonormalized)";
    throw ArgumentError(oss.str());
  }

  RandomStream rng(derive_stream(seed, "dictionary"));
  Eigen::MatrixXd entries(L, static_cast<Eigen::Index>(M) * d);
  for (int m = 0; m < M; ++m) {
    auto block = entries.middleCols(static_cast<Eigen::Index>(m) * d, d);
    bool ok = false;
    for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
      fill_gaussian(block, rng);
      if (!orthonormalize_in_place(block)) continue;
      const Eigen::MatrixXd gram = block.transpose() * block;
      ok = (gram - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= kOrthonormalityTol;
    }
    if (!ok) {
      std::ostringstream oss;
      oss << "generate dictionary: block " << (m + 1) << " could not be orthonormalized";
      throw SolverError(oss.str());
    }
  }
  return BlockedDictionary(std::move(entries), d);
}

BlockSparseVector generate_signal(const SignalSpec& spec) {
  if (spec.M < 1 || spec.d < 1) throw ArgumentError("generate signal: invalid dimensions");
  if (spec.s < 1 || spec.s > spec.M) {
    throw ArgumentError("generate signal: s must be in [1, M]");
  }
  if (!(spec.xmin_norm > 0.0) || !(spec.xmax_norm > 0.0) || spec.xmin_norm > spec.xmax_norm) {
    throw ArgumentError("generate signal: need 0 < xmin_norm <= xmax_norm");
  }
  if (spec.s < 2 && spec.xmin_norm != spec.xmax_norm) {
    throw ArgumentError("generate signal: s < 2 cannot realize both xmin_norm and xmax_norm");
  }

  RandomStream support_rng(derive_stream(spec.seed, "support"));
  RandomStream norm_rng(derive_stream(spec.seed, "norms"));
  RandomStream shape_rng(derive_stream(spec.seed, "shapes"));

  const std::vector<int> support = support_rng.sample_subset(spec.M, spec.s);

  std::vector<double> norms;
  norms.reserve(static_cast<std::size_t>(spec.s));
  norms.push_back(spec.xmin_norm);
  if (spec.s >= 2) norms.push_back(spec.xmax_norm);
  for (int i = 2; i < spec.s; ++i) {
    norms.push_back(spec.xmin_norm + norm_rng.next_double() * (spec.xmax_norm - spec.xmin_norm));
  }
  // Random assignment of norms to support blocks (Fisher-Yates).
  for (std::size_t i = norms.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(norm_rng.next_below(i));
    std::swap(norms[i - 1], norms[j]);
  }

  Eigen::VectorXd values =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.M) * spec.d);
  for (std::size_t i = 0; i < support.size(); ++i) {
    auto block = values.segment(static_cast<Eigen::Index>(support[i] - 1) * spec.d, spec.d);
    fill_block_shape(block, norms[i], spec.profile, shape_rng);
  }
  return BlockSparseVector(std::move(values), spec.d);
}

Eigen::VectorXd measure(const BlockedDictionary& dict, const BlockSparseVector& x,
                        const NoiseSpec& noise) {
  if (x.size() != dict.cols() || x.block_size() != dict.block_size()) {
    throw ArgumentError("measure: signal does not match the dictionary partition");
  }
  Eigen::VectorXd y = dict.entries() * x.values();

  RandomStream rng(derive_stream(noise.seed, "noise"));
  if (noise.model == NoiseModel::gaussian) {
    if (noise.sigma < 0.0) throw ArgumentError("measure: sigma must be nonnegative");
    if (noise.sigma > 0.0) y += noise.sigma * gaussian_vector(dict.rows(), rng);
  } else {
    if (noise.epsilon < 0.0) throw ArgumentError("measure: epsilon must be nonnegative");
    if (noise.epsilon > 0.0) {
      Eigen::VectorXd dir = gaussian_vector(dict.rows(), rng);
      y += dir * (noise.epsilon / dir.norm());
    }
  }
  return y;
}

}  // namespace bsl
