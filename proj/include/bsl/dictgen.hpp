#ifndef BSL_DICTGEN_HPP
#define BSL_DICTGEN_HPP

#include <cstdint>
#include <string>

#include "bsl/blocked_linalg.hpp"

namespace bsl {

/// Within-block shape of a generated signal:
///   spike  — a single entry carries the whole block norm,
///   flat   — all d entries equal norm/sqrt(d),
///   mixed  — each block independently picks spike or flat,
///   random — uniform direction on the d-sphere scaled to the norm.
enum class SignalProfile { spike, flat, mixed, random };

SignalProfile signal_profile_from_string(const std::string& name);
std::string to_string(SignalProfile profile);

struct SignalSpec {
  int M = 0;
  int d = 0;
  int s = 0;                 // number of nonzero blocks
  double xmin_norm = 1.0;    // smallest block norm, realized exactly
  double xmax_norm = 1.0;    // largest block norm, realized exactly
  SignalProfile profile = SignalProfile::flat;
  std::uint64_t seed = 0;
};

enum class NoiseModel { gaussian, adversarial_bounded };

NoiseModel noise_model_from_string(const std::string& name);
std::string to_string(NoiseModel model);

struct NoiseSpec {
  NoiseModel model = NoiseModel::gaussian;
  double sigma = 0.0;    // per-component std dev (gaussian model)
  double epsilon = 0.0;  // l2 budget (adversarial model)
  std::uint64_t seed = 0;
};

// Random dictionary with i.i.d. Gaussian entries and each block orthonormalized
// by modified Gram-Schmidt with re-orthogonalization; sub-coherence is 0 by
// construction. Deterministic given the seed.
BlockedDictionary generate_dictionary(int L, int M, int d, std::uint64_t seed);

// Block-sparse ground truth: support uniform among size-s block subsets, one
// block at xmin_norm, one at xmax_norm, the rest uniform in between, shapes per
// the profile. Requires xmin_norm == xmax_norm when s < 2.
BlockSparseVector generate_signal(const SignalSpec& spec);

// y = D x + w. Gaussian: w ~ N(0, sigma^2 I). Adversarial: w is a random
// direction scaled to ||w||_2 = epsilon exactly (a bounded-noise probe, not
// the worst case).
Eigen::VectorXd measure(const BlockedDictionary& dict, const BlockSparseVector& x,
                        const NoiseSpec& noise);

}  // namespace bsl

#endif  // BSL_DICTGEN_HPP
