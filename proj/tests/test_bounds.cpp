#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "bsl/bounds.hpp"
#include "bsl/coherence.hpp"
#include "bsl/dictgen.hpp"
#include "bsl/errors.hpp"
#include "bsl/estimators.hpp"
#include "bsl/rng.hpp"
#include "oracles.hpp"

using bsl::Algo;
using bsl::BlockedDictionary;
using bsl::CoherenceProfile;
using bsl::GuaranteeReport;
using bsl::ProbabilityForm;

namespace {

CoherenceProfile profile_of(double mu, double mu_block, double nu, int L, int M, int d) {
  CoherenceProfile p;
  p.mu = mu;
  p.mu_block = mu_block;
  p.nu = nu;
  p.L = L;
  p.M = M;
  p.d = d;
  return p;
}

}  // namespace

TEST_CASE("adversarial guarantee in the orthogonal limit") {
  const CoherenceProfile p = profile_of(0.0, 0.0, 0.0, 100, 20, 4);
  for (double eps : {0.0, 0.1, 0.4}) {
    const GuaranteeReport r = bsl::adversarial_guarantee(p, 3, 1.0, 2.0, eps, Algo::bomp);
    CHECK(r.condition_holds == (1.0 > 2.0 * eps));
    CHECK(r.condition_margin == doctest::Approx(1.0 - 2.0 * eps).epsilon(1e-14));
    if (r.condition_holds) {
      CHECK(*r.error_bound == doctest::Approx(eps * eps).epsilon(1e-14));
    } else {
      CHECK_FALSE(r.error_bound.has_value());
    }
  }
}

TEST_CASE("adversarial guarantee reduces to the scalar corollary at d = 1") {
  const double mu = 0.08, xmin = 0.7, xmax = 1.3, eps = 0.05;
  const int k = 3;
  const CoherenceProfile p = profile_of(mu, mu, 0.0, 200, 500, 1);

  // Scalar OMP corollary, written out directly: condition
  // xmin (1 - (2k-1) mu) > 2 eps, bound eps^2 / (1 - (k-1) mu).
  const GuaranteeReport r = bsl::adversarial_guarantee(p, k, xmin, xmax, eps, Algo::bomp);
  CHECK(r.condition_holds == (xmin * (1.0 - (2 * k - 1) * mu) > 2.0 * eps));
  CHECK(r.condition_margin ==
        doctest::Approx(xmin * (1.0 - (2 * k - 1) * mu) - 2.0 * eps).epsilon(1e-12));
  REQUIRE(r.error_bound.has_value());
  CHECK(*r.error_bound == doctest::Approx(eps * eps / (1.0 - (k - 1) * mu)).epsilon(1e-12));

  // The thresholding variant weighs the interference by xmax instead.
  const GuaranteeReport t = bsl::adversarial_guarantee(p, k, xmin, xmax, eps, Algo::bth);
  CHECK(t.condition_margin ==
        doctest::Approx(xmin - 2.0 * eps - (2 * k - 1) * mu * xmax).epsilon(1e-12));
}

TEST_CASE("adversarial guarantee: worked example at d = 5") {
  const CoherenceProfile p = profile_of(0.1, 0.026, 0.0, 3000, 1200, 5);
  const GuaranteeReport r = bsl::adversarial_guarantee(p, 1, 1.0, 1.0, 0.1, Algo::bomp);
  REQUIRE(r.condition_holds);
  // condition: 1 > 0.2 + 1*5*0.026 = 0.33; bound: 0.01 / (1 - 0) = 0.01
  CHECK(r.condition_margin == doctest::Approx(1.0 - 0.2 - 0.13).epsilon(1e-12));
  CHECK(*r.error_bound == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("crb: orthonormal support block gives d * sigma2") {
  const BlockedDictionary dict = bsl::generate_dictionary(40, 8, 5, 3);
  const std::vector<int> support{4};
  const bsl::CrbResult r = bsl::crb(dict, support, 1, 1.0);
  CHECK(r.unbiased_estimable);
  CHECK(*r.bound == doctest::Approx(5.0).epsilon(1e-10));

  CHECK(*bsl::crb(dict, support, 1, 0.0).bound == 0.0);

  const bsl::CrbResult undefined = bsl::crb(dict, support, 2, 1.0);
  CHECK_FALSE(undefined.unbiased_estimable);
  CHECK_FALSE(undefined.bound.has_value());
}

TEST_CASE("crb at paper-like coherence stays in the eigenvalue-bound interval") {
  const BlockedDictionary dict = bsl::generate_dictionary(3000, 60, 5, 12);
  bsl::RandomStream rng(bsl::derive_stream(1, "crb-supp"));
  const std::vector<int> support = rng.sample_subset(60, 3);
  const double bound = *bsl::crb(dict, support, 3, 1.0).bound;
  const double mu_b = bsl::block_coherence(dict);
  CHECK(bound >= 15.0 - 1e-9);
  CHECK(bound <= 15.0 / (1.0 - 2.0 * 5.0 * mu_b));
}

TEST_CASE("chi-square tail bounds dominate the quadrature-exact tail") {
  for (int d = 1; d <= 10; ++d) {
    for (double t = 1.0; t <= 6.01; t += 0.5) {
      const bsl::ChiSquareTailBound b = bsl::chi_square_tail_bound(d, t);
      const double exact = oracles::chi2_tail_quadrature(d, t);
      CHECK(b.tight_raw <= b.loose_raw * (1.0 + 1e-12));
      CHECK(b.tight_raw >= exact * (1.0 - 1e-9));
      CHECK(b.loose_raw >= exact * (1.0 - 1e-9));
      CHECK(b.tight >= 0.0);
      CHECK(b.tight <= 1.0);
    }
  }
  // d = 2 collapses to exp(-t^2/2) exactly.
  for (double t = 1.0; t <= 6.01; t += 0.5) {
    const bsl::ChiSquareTailBound b = bsl::chi_square_tail_bound(2, t);
    CHECK(b.tight_raw == doctest::Approx(std::exp(-t * t / 2.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(bsl::chi_square_tail_bound(3, 0.5), bsl::ArgumentError);
}

TEST_CASE("chi-square quadrature oracle sanity (frozen references)") {
  // Reference survival values computed independently (scipy.stats.chi2.sf).
  CHECK(oracles::chi2_tail_quadrature(1, 1.0) ==
        doctest::Approx(0.31731050786291115).epsilon(1e-8));
  CHECK(oracles::chi2_tail_quadrature(2, 2.0) ==
        doctest::Approx(0.1353352832366127).epsilon(1e-8));
  CHECK(oracles::chi2_tail_quadrature(3, 1.5) ==
        doctest::Approx(0.5221671895353914).epsilon(1e-8));
  CHECK(oracles::chi2_tail_quadrature(5, 3.0) ==
        doctest::Approx(0.1090641579497725).epsilon(1e-8));
  CHECK(oracles::chi2_tail_quadrature(10, 6.0) ==
        doctest::Approx(8.417609804902673e-05).epsilon(1e-7));
}

TEST_CASE("event-B failure bound: frozen value, forms, and limits") {
  // 0.8 (2*0.425*5*log 6000)^{3/2} / 6000^{1.125}, frozen from an independent
  // evaluation.
  CHECK(bsl::event_b_failure_bound(6000, 5, 0.425).raw ==
        doctest::Approx(0.010104056555717623).epsilon(1e-12));
  CHECK(bsl::event_b_failure_bound(6000, 5, 0.425, ProbabilityForm::theorem4).raw ==
        doctest::Approx(5.0 * 0.010104056555717623).epsilon(1e-12));

  // Monotone decay to zero past the peak.
  double prev = bsl::event_b_failure_bound(6000, 5, 0.2).raw;
  for (double alpha : {0.4, 0.8, 1.6, 3.2, 6.4}) {
    const double cur = bsl::event_b_failure_bound(6000, 5, alpha).raw;
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(prev < 1e-40);

  // d = 1 equals the scalar-corollary expression.
  for (double alpha : {1.1, 1.3, 2.0}) {
    const double lib = bsl::event_b_failure_bound(6000, 1, alpha).raw;
    const double ref = (0.8 / std::sqrt(2.0)) /
                       (std::pow(6000.0, alpha - 1.0) * std::sqrt(alpha * std::log(6000.0)));
    CHECK(lib == doctest::Approx(ref).epsilon(1e-12));
  }

  CHECK_THROWS_AS(bsl::event_b_failure_bound(6000, 5, 1e-4), bsl::ArgumentError);
  CHECK(bsl::event_b_failure_bound(6000, 1, 1.0).value <= 1.0);
}

TEST_CASE("solve_alpha finds the smallest qualifying alpha") {
  const double alpha = bsl::solve_alpha(6000, 5, 0.99);
  CHECK(alpha == doctest::Approx(0.425259).epsilon(0.0001));
  CHECK(bsl::event_b_failure_bound(6000, 5, alpha).raw <= 0.01 * (1.0 + 1e-9));

  // Grid cross-check at step 1e-4: no smaller alpha on the grid qualifies.
  for (double a = 0.34; a < alpha - 1e-4; a += 1e-4) {
    CHECK(bsl::event_b_failure_bound(6000, 5, a).raw > 0.01);
  }

  CHECK(bsl::solve_alpha(6000, 5, 0.5) < alpha);

  // Boundary consistency: asking for exactly the confidence attained at some
  // alpha on the decreasing branch returns that alpha.
  const double probe = bsl::event_b_failure_bound(6000, 5, 0.6).raw;
  CHECK(bsl::solve_alpha(6000, 5, 1.0 - probe) == doctest::Approx(0.6).epsilon(1e-8));
}

TEST_CASE("gaussian guarantee reproduces the d = 1 scalar corollary exactly") {
  const double mu = 0.05, xmin = 1.0;
  const int k = 4, N = 2000;
  const CoherenceProfile p = profile_of(mu, mu, 0.0, 300, N, 1);
  const GuaranteeReport r =
      bsl::gaussian_guarantee(p, k, xmin, xmin, 0.02, 0.99, Algo::bomp);
  REQUIRE(r.alpha.has_value());
  const double alpha = *r.alpha;
  const double log_n = std::log(static_cast<double>(N));

  // Corollary forms, written out directly.
  const double cond_margin =
      xmin * (1.0 - (2 * k - 1) * mu) - 2.0 * 0.02 * std::sqrt(2.0 * alpha * log_n);
  const double bound_coeff = 2.0 * alpha * k * log_n / ((1.0 - (k - 1) * mu) * (1.0 - (k - 1) * mu));
  CHECK(r.condition_margin == doctest::Approx(cond_margin).epsilon(1e-12));
  REQUIRE(r.error_bound_per_sigma2.has_value());
  CHECK(*r.error_bound_per_sigma2 == doctest::Approx(bound_coeff).epsilon(1e-12));
}

TEST_CASE("gaussian guarantee: block worked example and sigma_max semantics") {
  const CoherenceProfile p = profile_of(0.1, 0.026, 0.0, 3000, 1200, 5);

  const GuaranteeReport r = bsl::gaussian_guarantee(p, 1, 1.0, 1.0, 0.05, 0.99, Algo::bomp);
  REQUIRE(r.condition_holds);
  CHECK(*r.error_bound_per_sigma2 == doctest::Approx(36.99546942268759).epsilon(1e-6));
  CHECK(*r.error_bound == doctest::Approx(36.99546942268759 * 0.0025).epsilon(1e-6));
  CHECK(*r.failure_probability_bound <= 0.01 + 1e-9);

  // Just inside vs just outside the maximal noise level.
  const double sigma_max = *r.sigma_max;
  CHECK(bsl::gaussian_guarantee(p, 1, 1.0, 1.0, sigma_max * 0.999, 0.99, Algo::bomp)
            .condition_holds);
  CHECK_FALSE(bsl::gaussian_guarantee(p, 1, 1.0, 1.0, sigma_max * 1.001, 0.99, Algo::bomp)
                  .condition_holds);
  // Diagnostic variant removes the factor d under the root.
  CHECK(*r.sigma_max_alt == doctest::Approx(sigma_max * std::sqrt(5.0)).epsilon(1e-12));

  // sigma = 0 keeps the condition and zeroes the bound.
  const GuaranteeReport r0 = bsl::gaussian_guarantee(p, 1, 1.0, 1.0, 0.0, 0.99, Algo::bomp);
  CHECK(r0.condition_holds);
  CHECK(*r0.error_bound == 0.0);

  // k = 5 is unsatisfiable at these metrics for any sigma.
  const GuaranteeReport r5 = bsl::gaussian_guarantee(p, 5, 1.0, 1.0, 0.0, 0.99, Algo::bomp);
  CHECK_FALSE(r5.condition_holds);
  CHECK_FALSE(r5.sigma_max.has_value());
  CHECK_FALSE(r5.error_bound.has_value());
}

TEST_CASE("report structure: bounds present iff the condition holds") {
  const CoherenceProfile p = profile_of(0.1, 0.03, 0.0, 500, 100, 3);
  for (double sigma : {0.0, 0.01, 0.05, 0.2, 1.0}) {
    for (auto algo : {Algo::bth, Algo::bomp}) {
      const GuaranteeReport r = bsl::gaussian_guarantee(p, 2, 1.0, 1.5, sigma, 0.95, algo);
      CHECK(r.error_bound.has_value() == r.condition_holds);
      CHECK(r.failure_probability_bound.has_value() == r.condition_holds);
      if (r.failure_probability_bound) {
        CHECK(*r.failure_probability_bound >= 0.0);
        CHECK(*r.failure_probability_bound <= 1.0);
      }
      const GuaranteeReport adv = bsl::adversarial_guarantee(p, 2, 1.0, 1.5, sigma, algo);
      CHECK_FALSE(adv.failure_probability_bound.has_value());
      CHECK_FALSE(adv.alpha.has_value());
    }
  }
}

TEST_CASE("block adversarial bound dominates the scalar bound when both apply") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BlockedDictionary dict = bsl::generate_dictionary(200, 10, 2, 700 + seed);
    const bsl::CoherenceProfile p = bsl::coherence_profile(dict);
    const int k = 1, s = 1;
    const double eps = 0.05, xmin = 1.0;

    const GuaranteeReport block = bsl::adversarial_guarantee(p, k, xmin, xmin, eps, Algo::bomp);
    // Scalar view of the same instance: sparsity s*d, coherence mu, smallest
    // nonzero entry at most xmin.
    const CoherenceProfile sp = profile_of(p.mu, p.mu, 0.0, p.L, p.M * p.d, 1);
    const GuaranteeReport scalar =
        bsl::adversarial_guarantee(sp, s * p.d, xmin / std::sqrt(2.0), xmin, eps, Algo::bomp);
    if (block.condition_holds && scalar.condition_holds) {
      CHECK(*block.error_bound <= *scalar.error_bound * (1.0 + 1e-12));
    }
  }
}
