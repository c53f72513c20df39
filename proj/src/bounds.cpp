#include "bsl/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "bsl/errors.hpp"

namespace bsl {

namespace {

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

// n!! with the empty product (n <= 0) equal to 1.
double double_factorial(int n) {
  double p = 1.0;
  for (int v = n; v >= 1; v -= 2) p *= v;
  return p;
}

double alpha_floor(int N, int d) { return 1.0 / (2.0 * d * std::log(static_cast<double>(N))); }

}  // namespace

Algo algo_from_string(const std::string& name) {
  if (name == "bth") return Algo::bth;
  if (name == "bomp") return Algo::bomp;
  throw ArgumentError("unknown algorithm for guarantees: " + name);
}

std::string to_string(Algo algo) { return algo == Algo::bth ? "bth" : "bomp"; }

ProbabilityForm probability_form_from_string(const std::string& name) {
  if (name == "lemma5") return ProbabilityForm::lemma5;
  if (name == "theorem4") return ProbabilityForm::theorem4;
  throw ArgumentError("unknown probability form: " + name);
}

std::string to_string(ProbabilityForm form) {
  return form == ProbabilityForm::lemma5 ? "lemma5" : "theorem4";
}

GuaranteeReport adversarial_guarantee(const CoherenceProfile& profile, int k, double xmin,
                                      double xmax, double eps, Algo algo) {
  if (k < 1) throw ArgumentError("adversarial guarantee: k must be positive");
  if (xmin < 0.0 || xmax < 0.0 || eps < 0.0) {
    throw ArgumentError("adversarial guarantee: inputs must be nonnegative");
  }
  if (xmin > xmax) throw ArgumentError("adversarial guarantee: xmin must not exceed xmax");

  const double d = profile.d;
  const double nu = profile.nu;
  const double mu_b = profile.mu_block;
  const double x_interference = (algo == Algo::bth) ? xmax : xmin;

  const double lhs = (1.0 - (d - 1.0) * nu) * xmin;
  const double rhs =
      2.0 * eps * std::sqrt(1.0 + (d - 1.0) * nu) + (2.0 * k - 1.0) * d * mu_b * x_interference;

  GuaranteeReport report;
  report.algorithm = to_string(algo);
  report.noise_model = "adversarial";
  report.condition_holds = lhs > rhs;
  report.condition_margin = lhs - rhs;
  if (report.condition_holds) {
    const double denom = 1.0 - (d - 1.0) * nu - (k - 1.0) * d * mu_b;
    // The support condition implies 1 - (d-1)nu > (2k-1) d mu_B >= (k-1) d mu_B.
    assert(denom > 0.0);
    report.error_bound = eps * eps / denom;
  }
  return report;
}

CrbResult crb(const BlockedDictionary& dict, std::span<const int> support, int k, double sigma2) {
  if (sigma2 < 0.0) throw ArgumentError("crb: sigma2 must be nonnegative");
  if (k < 1) throw ArgumentError("crb: k must be positive");
  CrbResult result;
  result.unbiased_estimable = static_cast<int>(support.size()) == k;
  if (!result.unbiased_estimable) return result;

  std::vector<int> sorted(support.begin(), support.end());
  std::sort(sorted.begin(), sorted.end());
  const Eigen::MatrixXd sub = subdictionary(dict, sorted);
  const Eigen::MatrixXd gram = sub.transpose() * sub;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const auto& lambda = eig.eigenvalues();
  if (lambda(0) < 1e-20 * lambda(lambda.size() - 1)) {
    throw SingularityError("crb: rank-deficient subdictionary on the given support");
  }
  double trace_inverse = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) trace_inverse += 1.0 / lambda(i);
  result.bound = sigma2 * trace_inverse;
  return result;
}

ChiSquareTailBound chi_square_tail_bound(int d, double t) {
  if (d < 1) throw ArgumentError("chi-square tail bound: d must be positive");
  if (t < 1.0) {
    throw ArgumentError("chi-square tail bound: requires t >= 1 (bound hypothesis)");
  }
  const double envelope = std::pow(t, d - 2) * std::exp(-t * t / 2.0);
  ChiSquareTailBound out;
  out.tight_raw = double_factorial(d - 2) * std::ceil(d / 2.0) /
                  (std::pow(2.0, d / 2.0 - 1.0) * std::tgamma(d / 2.0)) * envelope;
  out.loose_raw = 0.8 * d * envelope;
  out.tight = clip01(out.tight_raw);
  out.loose = clip01(out.loose_raw);
  return out;
}

ProbabilityBound event_b_failure_bound(int N, int d, double alpha, ProbabilityForm form) {
  if (N < 2 || d < 1) throw ArgumentError("event-B bound: need N >= 2 and d >= 1");
  const double floor = alpha_floor(N, d);
  if (alpha < floor) {
    std::ostringstream oss;
    oss << "event-B bound: alpha = " << alpha << " below the hypothesis floor 1/(2 d log N) = "
        << floor;
    throw ArgumentError(oss.str());
  }
  const double log_n = std::log(static_cast<double>(N));
  // Evaluated in log space; N^{alpha d - 1} overflows for large alpha.
  double log_value = std::log(0.8) + (d / 2.0 - 1.0) * std::log(2.0 * alpha * d * log_n) -
                     (alpha * d - 1.0) * log_n;
  if (form == ProbabilityForm::theorem4) log_value += std::log(static_cast<double>(d));
  ProbabilityBound out;
  out.raw = std::exp(log_value);
  out.value = clip01(out.raw);
  return out;
}

double solve_alpha(int N, int d, double confidence, ProbabilityForm form) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ArgumentError("solve alpha: confidence must lie in (0, 1)");
  }
  const double target = 1.0 - confidence;
  const double floor = alpha_floor(N, d);
  const auto bound = [&](double a) { return event_b_failure_bound(N, d, a, form).raw; };

  if (bound(floor) <= target) return floor;

  // The bound rises until alpha = (1/2 - 1/d)/log N (d >= 3) and decreases
  // beyond it; the crossing we want lies on the decreasing branch.
  const double peak = std::max(floor, (0.5 - 1.0 / d) / std::log(static_cast<double>(N)));
  double lo = peak;
  double hi = std::max(1.0, 2.0 * peak);
  while (bound(hi) > target) {
    hi *= 2.0;
    if (hi > 1e3) {
      throw SolverError("solve alpha: confidence not achievable with alpha <= 1e3");
    }
  }
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-10 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (bound(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

GuaranteeReport gaussian_guarantee(const CoherenceProfile& profile, int k, double xmin,
                                   double xmax, double sigma, double confidence, Algo algo,
                                   ProbabilityForm form) {
  if (k < 1) throw ArgumentError("gaussian guarantee: k must be positive");
  if (xmin < 0.0 || xmax < 0.0 || sigma < 0.0) {
    throw ArgumentError("gaussian guarantee: inputs must be nonnegative");
  }
  if (xmin > xmax) throw ArgumentError("gaussian guarantee: xmin must not exceed xmax");

  const double d = profile.d;
  const double nu = profile.nu;
  const double mu_b = profile.mu_block;
  const long long n_atoms = static_cast<long long>(profile.M) * profile.d;
  const int N = static_cast<int>(n_atoms);
  const double log_n = std::log(static_cast<double>(N));

  const double alpha = solve_alpha(N, profile.d, confidence, form);
  const double x_interference = (algo == Algo::bth) ? xmax : xmin;
  const double lhs = (1.0 - (d - 1.0) * nu) * xmin - (2.0 * k - 1.0) * d * mu_b * x_interference;
  const double noise_scale = 2.0 * std::sqrt(2.0 * alpha * d * (1.0 + (d - 1.0) * nu) * log_n);
  const double rhs = sigma * noise_scale;

  GuaranteeReport report;
  report.algorithm = to_string(algo);
  report.noise_model = "gaussian";
  report.alpha = alpha;
  report.condition_holds = lhs >= rhs;
  report.condition_margin = lhs - rhs;

  if (lhs > 0.0) {
    const double denom = 1.0 - (d - 1.0) * nu - (k - 1.0) * d * mu_b;
    assert(denom > 0.0);
    report.error_bound_per_sigma2 =
        2.0 * alpha * (1.0 + (d - 1.0) * nu) * d * k * log_n / (denom * denom);
    report.sigma_max = lhs / noise_scale;
    // Diagnostic variant: d removed from under the square root.
    report.sigma_max_alt =
        lhs / (2.0 * std::sqrt(2.0 * alpha * (1.0 + (d - 1.0) * nu) * log_n));
  }
  if (report.condition_holds) {
    // lhs <= 0 with the condition holding forces sigma = 0; the bound is 0.
    report.error_bound =
        report.error_bound_per_sigma2 ? *report.error_bound_per_sigma2 * sigma * sigma : 0.0;
    report.failure_probability_bound = event_b_failure_bound(N, profile.d, alpha, form).value;
  }
  return report;
}

}  // namespace bsl
