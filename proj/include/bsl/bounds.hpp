#ifndef BSL_BOUNDS_HPP
#define BSL_BOUNDS_HPP

#include <optional>
#include <span>
#include <string>

#include "bsl/blocked_linalg.hpp"
#include "bsl/coherence.hpp"

namespace bsl {

enum class Algo { bth, bomp };

Algo algo_from_string(const std::string& name);
std::string to_string(Algo algo);

/// Which probability expression backs the Gaussian guarantees. The `lemma5`
/// form is 0.8 (2 a d log N)^{d/2-1} / N^{ad-1}; `theorem4` carries an extra
/// factor d. lemma5 is the default (see README, Guarantees).
enum class ProbabilityForm { lemma5, theorem4 };

ProbabilityForm probability_form_from_string(const std::string& name);
std::string to_string(ProbabilityForm form);

/// One guarantee evaluation. condition_margin is LHS - RHS of the governing
/// inequality (positive iff the condition holds strictly). error_bound is the
/// squared-error bound, present iff the condition holds. For the Gaussian
/// model, error_bound_per_sigma2 / sigma_max are present whenever a guarantee
/// exists for *some* noise level; sigma_max_alt is a diagnostic variant with
/// the factor d removed from under the square root.
struct GuaranteeReport {
  std::string algorithm;
  std::string noise_model;
  bool condition_holds = false;
  double condition_margin = 0.0;
  std::optional<double> error_bound;
  std::optional<double> error_bound_per_sigma2;
  std::optional<double> alpha;
  std::optional<double> failure_probability_bound;
  std::optional<double> sigma_max;
  std::optional<double> sigma_max_alt;
};

// Bounded-noise guarantee: support recovery condition and squared-error bound
// eps^2 / (1 - (d-1)nu - (k-1) d mu_B). eps = 0 reduces to the noiseless
// recovery conditions.
GuaranteeReport adversarial_guarantee(const CoherenceProfile& profile, int k, double xmin,
                                      double xmax, double eps, Algo algo);

/// Cramer-Rao bound sigma^2 Tr((D_S^T D_S)^{-1}) for locally unbiased
/// estimation, defined only at maximal support (|S| = k).
struct CrbResult {
  std::optional<double> bound;
  bool unbiased_estimable = false;
};

CrbResult crb(const BlockedDictionary& dict, std::span<const int> support, int k, double sigma2);

/// Upper bounds on Pr{||u||^2 >= t^2} for u ~ N(0, I_d), valid for t >= 1.
/// `tight` is the double-factorial/Gamma expression (equality for even d at
/// the series level), `loose` is 0.8 d t^{d-2} e^{-t^2/2}. The *_raw fields
/// are unclipped; tight/loose are clipped to [0, 1].
struct ChiSquareTailBound {
  double tight = 0.0;
  double loose = 0.0;
  double tight_raw = 0.0;
  double loose_raw = 0.0;
};

ChiSquareTailBound chi_square_tail_bound(int d, double t);

/// Bound on the probability that some block-noise correlation exceeds its
/// threshold; `value` is clipped to [0, 1], `raw` is the bare expression.
struct ProbabilityBound {
  double value = 0.0;
  double raw = 0.0;
};

// 0.8 (2 alpha d log N)^{d/2-1} / N^{alpha d - 1}, or d times that for the
// theorem4 form. Requires alpha >= 1/(2 d log N).
ProbabilityBound event_b_failure_bound(int N, int d, double alpha,
                                       ProbabilityForm form = ProbabilityForm::lemma5);

// Smallest alpha with event_b_failure_bound <= 1 - confidence (bisection on
// the decreasing branch, relative tolerance 1e-10).
double solve_alpha(int N, int d, double confidence,
                   ProbabilityForm form = ProbabilityForm::lemma5);

// Gaussian-noise guarantee at the given confidence level; alpha is chosen by
// solve_alpha. x* in the interference term is xmax for BTH and xmin for BOMP.
GuaranteeReport gaussian_guarantee(const CoherenceProfile& profile, int k, double xmin,
                                   double xmax, double sigma, double confidence, Algo algo,
                                   ProbabilityForm form = ProbabilityForm::lemma5);

}  // namespace bsl

#endif  // BSL_BOUNDS_HPP
