#ifndef BSL_COHERENCE_HPP
#define BSL_COHERENCE_HPP

#include <cstdint>

#include "bsl/blocked_linalg.hpp"

namespace bsl {

/// The three coherence metrics of a blocked dictionary:
///   mu       — max |<d_i, d_j>| over all distinct atoms,
///   mu_block — max over block pairs i != j of ||D[i]^T D[j]|| / d,
///   nu       — max |<d_i, d_j>| over distinct atoms within one block.
/// For unit-norm atoms, nu <= mu and mu_block <= mu.
struct CoherenceProfile {
  double mu = 0.0;
  double mu_block = 0.0;
  double nu = 0.0;
  int d = 0;
  int M = 0;
  int L = 0;
};

// All three metrics in a single pass over the Gram matrix, computed in
// column strips (the full N x N Gram is never materialized). threads = 0
// uses all hardware threads.
CoherenceProfile coherence_profile(const BlockedDictionary& dict, int threads = 0);

double coherence(const BlockedDictionary& dict, int threads = 0);        // mu, needs N >= 2
double block_coherence(const BlockedDictionary& dict, int threads = 0);  // mu_B, needs M >= 2
double sub_coherence(const BlockedDictionary& dict);                     // nu; 0 when d = 1

/// Sampled verification of the Gram-eigenvalue bounds implied by the
/// coherence metrics. Each slack is (bound) - (observed quantity); the bounds
/// hold iff every slack is nonnegative.
struct GramBoundReport {
  int k = 0;
  int trials = 0;
  double cross_norm_slack = 0.0;        // d*mu_B - ||D[i]^T D[j]||
  double diag_norm_slack = 0.0;         // 1 + (d-1)*nu - ||D[i]^T D[i]||
  double diag_inverse_slack = 0.0;      // 1/(1-(d-1)nu) - ||(D[i]^T D[i])^{-1}||
  double subgram_inverse_slack = 0.0;   // 1/(1-(d-1)nu-(k-1)d*mu_B) - ||(D_I^T D_I)^{-1}||
  bool diag_inverse_applicable = false;     // 1 - (d-1)nu > 0
  bool subgram_inverse_applicable = false;  // 1 - (d-1)nu - (k-1)d*mu_B > 0
};

// Samples `trials` random index sets I with |I| uniform in {1..k} and reports
// the worst observed slack for each bound.
GramBoundReport gram_bound_report(const BlockedDictionary& dict, int k, int trials,
                                  std::uint64_t seed);

}  // namespace bsl

#endif  // BSL_COHERENCE_HPP
