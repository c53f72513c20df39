// Independent reference implementations used only by tests. These deliberately
// avoid the library's solve paths (QR, SVD, closed-form bounds) so they can
// serve as cross-checks: normal equations instead of QR, power iteration
// instead of SVD, adaptive quadrature instead of tail formulas, and plain-loop
// scalar OMP/thresholding.

#ifndef BSL_TESTS_ORACLES_HPP
#define BSL_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracles {

// Largest singular value by power iteration on A^T A (or A A^T, whichever is
// smaller), run to a fixed-point tolerance of 1e-12.
inline double power_iteration_norm(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd gram =
      a.rows() <= a.cols() ? Eigen::MatrixXd(a * a.transpose())
                           : Eigen::MatrixXd(a.transpose() * a);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(gram.rows());
  v += 1e-3 * Eigen::VectorXd::LinSpaced(gram.rows(), 0.0, 1.0);  // break symmetry
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXd w = gram * v;
    const double next = v.dot(w);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (it > 2 && std::abs(next - lambda) <= 1e-12 * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, lambda));
}

// Least squares on explicit columns via the normal equations (LDLT), the
// textbook route the library intentionally does not take.
inline Eigen::VectorXd normal_equations_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  const Eigen::MatrixXd gram = a.transpose() * a;
  return gram.ldlt().solve(a.transpose() * y);
}

// Scalar OMP written directly from its textbook description: greedy max
// |<d_i, r>|, refit by normal equations, never reselect.
struct ScalarResult {
  Eigen::VectorXd estimate;
  std::vector<int> picks;  // 0-based atom indices in selection order
};

inline ScalarResult scalar_omp(const Eigen::MatrixXd& dict, const Eigen::VectorXd& y, int k) {
  const Eigen::Index n = dict.cols();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> picks;
  Eigen::VectorXd residual = y;
  Eigen::VectorXd estimate = Eigen::VectorXd::Zero(n);
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double best_corr = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double c = std::abs(dict.col(i).dot(residual));
      if (c > best_corr) {
        best_corr = c;
        best = static_cast<int>(i);
      }
    }
    picks.push_back(best);
    used[static_cast<std::size_t>(best)] = true;

    std::vector<int> sorted = picks;
    std::sort(sorted.begin(), sorted.end());
    Eigen::MatrixXd sub(dict.rows(), static_cast<Eigen::Index>(sorted.size()));
    for (std::size_t c = 0; c < sorted.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = dict.col(sorted[c]);
    const Eigen::VectorXd coef = normal_equations_solve(sub, y);
    estimate.setZero();
    for (std::size_t c = 0; c < sorted.size(); ++c) estimate(sorted[c]) = coef(static_cast<Eigen::Index>(c));
    residual = y - dict * estimate;
  }
  return {estimate, picks};
}

// Scalar thresholding: top-k correlations in one shot, then least squares.
inline ScalarResult scalar_thresholding(const Eigen::MatrixXd& dict, const Eigen::VectorXd& y,
                                        int k) {
  const Eigen::Index n = dict.cols();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> corr(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) corr[static_cast<std::size_t>(i)] = std::abs(dict.col(i).dot(y));
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return corr[static_cast<std::size_t>(a)] > corr[static_cast<std::size_t>(b)]; });
  order.resize(static_cast<std::size_t>(k));

  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  Eigen::MatrixXd sub(dict.rows(), k);
  for (int c = 0; c < k; ++c) sub.col(c) = dict.col(sorted[static_cast<std::size_t>(c)]);
  const Eigen::VectorXd coef = normal_equations_solve(sub, y);
  Eigen::VectorXd estimate = Eigen::VectorXd::Zero(n);
  for (int c = 0; c < k; ++c) estimate(sorted[static_cast<std::size_t>(c)]) = coef(c);
  return {estimate, order};
}

// chi-square density with d degrees of freedom.
inline double chi2_pdf(int d, double x) {
  if (x <= 0.0) return 0.0;
  return std::exp((d / 2.0 - 1.0) * std::log(x) - x / 2.0 - (d / 2.0) * std::log(2.0) -
                  std::lgamma(d / 2.0));
}

namespace detail {
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Pr{ ||u||^2 >= t^2 } for u ~ N(0, I_d), by adaptive quadrature of the
// chi-square density (no incomplete-gamma identities from the library side).
inline double chi2_tail_quadrature(int d, double t) {
  const double lo = t * t;
  const double hi = std::max(lo + 160.0, 8.0 * d + 160.0);
  return integrate([d](double x) { return chi2_pdf(d, x); }, lo, hi, 1e-13);
}

inline double chi2_cdf_quadrature(int d, double x) {
  if (x <= 0.0) return 0.0;
  return integrate([d](double u) { return chi2_pdf(d, u); }, 0.0, x, 1e-13);
}

// Median of the chi-square distribution by bisection on the quadrature CDF.
inline double chi2_median_quadrature(int d) {
  double lo = 0.0, hi = 8.0 * d + 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (chi2_cdf_quadrature(d, mid) < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles

#endif  // BSL_TESTS_ORACLES_HPP
