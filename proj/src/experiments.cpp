#include "bsl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "bsl/errors.hpp"
#include "bsl/estimators.hpp"
#include "bsl/parallel.hpp"
#include "bsl/rng.hpp"

namespace bsl {

namespace {

constexpr const char* kSweepCsvHeader =
    "algo,signal_id,sigma2,median_sq_err,min_sq_err,max_sq_err,crb,support_rate";

std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void validate_config(const SweepConfig& c) {
  if (c.L < 1 || c.M < 1 || c.d < 1) throw ArgumentError("sweep: dimensions must be positive");
  if (c.k < 1 || c.k > c.M) throw ArgumentError("sweep: k out of range");
  if (static_cast<long long>(c.k) * c.d > c.L) {
    throw ArgumentError("sweep: infeasible dimensions, k*d exceeds L");
  }
  if (c.s < 1 || c.s > c.k) throw ArgumentError("sweep: s must be in [1, k]");
  if (c.sigma2_grid.empty()) throw ArgumentError("sweep: empty sigma2 grid");
  for (std::size_t i = 0; i < c.sigma2_grid.size(); ++i) {
    if (c.sigma2_grid[i] < 0.0) throw ArgumentError("sweep: sigma2 must be nonnegative");
    if (i > 0 && c.sigma2_grid[i] <= c.sigma2_grid[i - 1]) {
      throw ArgumentError("sweep: sigma2 grid must be strictly ascending");
    }
  }
  if (c.trials_per_cell < 1) throw ArgumentError("sweep: trials_per_cell must be positive");
  if (c.num_signals < 1) throw ArgumentError("sweep: num_signals must be positive");
  if (c.profiles.empty()) throw ArgumentError("sweep: empty profile list");
  if (c.algorithms.empty()) throw ArgumentError("sweep: empty algorithm list");
  static const std::set<std::string> known{"bth", "bomp", "omp", "thr", "oracle"};
  for (const auto& a : c.algorithms) {
    if (!known.count(a)) throw ArgumentError("sweep: unknown algorithm " + a);
  }
}

// Scalar (entry-wise) support of a generated signal, 1-based atom indices.
std::vector<int> scalar_support(const BlockSparseVector& x) {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < x.values().size(); ++i) {
    if (x.values()(i) != 0.0) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

bool contains_all(const std::vector<int>& selected, const std::vector<int>& truth) {
  const std::set<int> sel(selected.begin(), selected.end());
  for (int t : truth) {
    if (!sel.count(t)) return false;
  }
  return true;
}

struct CellOutcome {
  std::vector<double> sq_errors;   // per trial
  int recoveries = 0;
};

}  // namespace

double median_squared_error(std::span<const double> errors) {
  if (errors.empty()) throw ArgumentError("median: empty list");
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

std::vector<SweepRecord> mc_sweep(const SweepConfig& config) {
  validate_config(config);

  const BlockedDictionary dict =
      generate_dictionary(config.L, config.M, config.d,
                          derive_stream(config.master_seed, "dictionary"));
  const bool need_scalar =
      std::any_of(config.algorithms.begin(), config.algorithms.end(),
                  [](const std::string& a) { return a == "omp" || a == "thr"; });
  std::optional<BlockedDictionary> scalar_dict;
  if (need_scalar) scalar_dict = dict.reblocked_scalar();
  const int scalar_k = std::min(config.k * config.d, config.L);

  // Ground-truth signals, profiles cycled.
  std::vector<BlockSparseVector> signals;
  std::vector<std::vector<int>> supports;
  std::vector<std::vector<int>> atom_supports;
  std::vector<double> crb_trace;  // Tr((D_S^T D_S)^{-1}) per signal
  signals.reserve(static_cast<std::size_t>(config.num_signals));
  for (int i = 0; i < config.num_signals; ++i) {
    SignalSpec spec;
    spec.M = config.M;
    spec.d = config.d;
    spec.s = config.s;
    spec.xmin_norm = config.xmin_norm;
    spec.xmax_norm = config.xmax_norm;
    spec.profile = config.profiles[static_cast<std::size_t>(i) % config.profiles.size()];
    spec.seed = derive_stream(derive_stream(config.master_seed, "signal"),
                              static_cast<std::uint64_t>(i));
    signals.push_back(generate_signal(spec));
    supports.push_back(signals.back().support());
    atom_supports.push_back(scalar_support(signals.back()));
    const CrbResult ref = crb(dict, supports.back(), config.s, 1.0);
    crb_trace.push_back(ref.bound ? *ref.bound : 0.0);
  }

  const std::size_t n_sigmas = config.sigma2_grid.size();
  const std::size_t n_signals = static_cast<std::size_t>(config.num_signals);
  const std::size_t n_algos = config.algorithms.size();
  // outcome[(signal, sigma) cell][algo]
  std::vector<std::vector<CellOutcome>> outcomes(n_signals * n_sigmas,
                                                 std::vector<CellOutcome>(n_algos));

  const std::uint64_t trial_key = derive_stream(config.master_seed, "trial");
  parallel_for(n_signals * n_sigmas, config.threads, [&](std::size_t cell) {
    const std::size_t sig_idx = cell / n_sigmas;
    const std::size_t sigma_idx = cell % n_sigmas;
    const double sigma2 = config.sigma2_grid[sigma_idx];
    const BlockSparseVector& x = signals[sig_idx];

    for (int t = 0; t < config.trials_per_cell; ++t) {
      NoiseSpec noise;
      noise.model = NoiseModel::gaussian;
      noise.sigma = std::sqrt(sigma2);
      noise.seed = derive_stream(derive_stream(derive_stream(trial_key, sig_idx), sigma_idx),
                                 static_cast<std::uint64_t>(t));
      const Eigen::VectorXd y = measure(dict, x, noise);

      for (std::size_t a = 0; a < n_algos; ++a) {
        const std::string& algo = config.algorithms[a];
        EstimateResult result = [&] {
          if (algo == "bth") return bth(dict, y, config.k);
          if (algo == "bomp") return bomp(dict, y, config.k);
          if (algo == "omp") return bomp(*scalar_dict, y, scalar_k);
          if (algo == "thr") return bth(*scalar_dict, y, scalar_k);
          return oracle(dict, y, supports[sig_idx]);
        }();
        const double sq_err = (result.estimate.values() - x.values()).squaredNorm();
        const bool recovered = (algo == "omp" || algo == "thr")
                                   ? contains_all(result.selected_support, atom_supports[sig_idx])
                                   : contains_all(result.selected_support, supports[sig_idx]);
        auto& cellout = outcomes[cell][a];
        cellout.sq_errors.push_back(sq_err);
        if (recovered) ++cellout.recoveries;
      }
    }
  });

  // Deterministic reduction keyed by (algorithm order, sigma2 order).
  std::vector<SweepRecord> records;
  records.reserve(n_algos * n_sigmas);
  for (std::size_t a = 0; a < n_algos; ++a) {
    for (std::size_t si = 0; si < n_sigmas; ++si) {
      SweepRecord rec;
      rec.algorithm = config.algorithms[a];
      rec.sigma2 = config.sigma2_grid[si];
      double crb_sum = 0.0;
      long recoveries = 0;
      for (std::size_t g = 0; g < n_signals; ++g) {
        const CellOutcome& cell = outcomes[g * n_sigmas + si][a];
        rec.median_sq_errors.push_back(median_squared_error(cell.sq_errors));
        rec.per_signal_support_rate.push_back(static_cast<double>(cell.recoveries) /
                                              config.trials_per_cell);
        rec.per_signal_crb.push_back(crb_trace[g] * rec.sigma2);
        crb_sum += crb_trace[g] * rec.sigma2;
        recoveries += cell.recoveries;
      }
      rec.envelope_min = *std::min_element(rec.median_sq_errors.begin(),
                                           rec.median_sq_errors.end());
      rec.envelope_max = *std::max_element(rec.median_sq_errors.begin(),
                                           rec.median_sq_errors.end());
      rec.crb_value = crb_sum / static_cast<double>(n_signals);
      rec.support_recovery_rate = static_cast<double>(recoveries) /
                                  (static_cast<double>(n_signals) * config.trials_per_cell);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<TableRecord> guarantee_table(std::span<const TableRowSpec> rows, double confidence,
                                         ProbabilityForm form, double xmin_block,
                                         std::uint64_t seed, int threads) {
  std::vector<TableRecord> records(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t r) {
    const TableRowSpec& row = rows[r];
    if (row.L < 1 || row.M < 1 || row.d < 1 || row.k < 1 || row.k > row.M ||
        static_cast<long long>(row.k) * row.d > row.L) {
      throw ArgumentError("guarantee table: infeasible row dimensions");
    }
    const std::uint64_t row_seed = derive_stream(derive_stream(seed, "table-row"),
                                                 static_cast<std::uint64_t>(r));
    const BlockedDictionary dict = generate_dictionary(row.L, row.M, row.d, row_seed);

    TableRecord rec;
    rec.row = row;
    if (row.mu && row.mu_block) {
      rec.mu_used = *row.mu;
      rec.mu_block_used = *row.mu_block;
      rec.nu_used = row.nu.value_or(sub_coherence(dict));
    } else {
      const CoherenceProfile measured = coherence_profile(dict, threads);
      rec.mu_used = row.mu.value_or(measured.mu);
      rec.mu_block_used = row.mu_block.value_or(measured.mu_block);
      rec.nu_used = row.nu.value_or(measured.nu);
    }

    // CRB for a uniformly drawn size-k support.
    RandomStream support_rng(derive_stream(row_seed, "crb-support"));
    const std::vector<int> support = support_rng.sample_subset(row.M, row.k);
    rec.crb_per_sigma2 = *crb(dict, support, row.k, 1.0).bound;

    // Block guarantee (BOMP view): minimum block norm xmin_block.
    CoherenceProfile block_profile;
    block_profile.mu = rec.mu_used;
    block_profile.mu_block = rec.mu_block_used;
    block_profile.nu = rec.nu_used;
    block_profile.d = row.d;
    block_profile.M = row.M;
    block_profile.L = row.L;
    const GuaranteeReport bomp_report = gaussian_guarantee(
        block_profile, row.k, xmin_block, xmin_block, 0.0, confidence, Algo::bomp, form);
    if (bomp_report.sigma_max && *bomp_report.sigma_max > 0.0) {
      rec.bomp_guarantee_per_sigma2 = bomp_report.error_bound_per_sigma2;
      rec.bomp_sigma_max = bomp_report.sigma_max;
    }

    // Scalar guarantee (OMP view): sparsity k*d, coherence mu, minimum
    // nonzero entry xmin_block/sqrt(d).
    CoherenceProfile scalar_profile;
    scalar_profile.mu = rec.mu_used;
    scalar_profile.mu_block = rec.mu_used;
    scalar_profile.nu = 0.0;
    scalar_profile.d = 1;
    scalar_profile.M = row.M * row.d;
    scalar_profile.L = row.L;
    const double xmin_scalar = xmin_block / std::sqrt(static_cast<double>(row.d));
    const GuaranteeReport omp_report =
        gaussian_guarantee(scalar_profile, row.k * row.d, xmin_scalar, xmin_scalar, 0.0,
                           confidence, Algo::bomp, form);
    if (omp_report.sigma_max && *omp_report.sigma_max > 0.0) {
      rec.omp_guarantee_per_sigma2 = omp_report.error_bound_per_sigma2;
      rec.omp_sigma_max = omp_report.sigma_max;
    }
    records[r] = std::move(rec);
  });
  return records;
}

std::string sweep_to_csv(std::span<const SweepRecord> records) {
  std::ostringstream out;
  out << kSweepCsvHeader << "\n";
  for (const auto& rec : records) {
    for (std::size_t g = 0; g < rec.median_sq_errors.size(); ++g) {
      out << rec.algorithm << ',' << (g + 1) << ',' << format_g6(rec.sigma2) << ','
          << format_g6(rec.median_sq_errors[g]) << ',' << format_g6(rec.envelope_min) << ','
          << format_g6(rec.envelope_max) << ',' << format_g6(rec.per_signal_crb[g]) << ','
          << format_g6(rec.per_signal_support_rate[g]) << "\n";
    }
  }
  return out.str();
}

std::string table_to_csv(std::span<const TableRecord> records) {
  std::ostringstream out;
  out << "M,d,L,k,mu,mu_block,omp_guarantee_per_sigma2,omp_sigma_max,"
         "bomp_guarantee_per_sigma2,bomp_sigma_max,crb_per_sigma2\n";
  const auto cell = [](const std::optional<double>& v) {
    return v ? format_g6(*v) : std::string("---");
  };
  for (const auto& rec : records) {
    out << rec.row.M << ',' << rec.row.d << ',' << rec.row.L << ',' << rec.row.k << ','
        << format_g6(rec.mu_used) << ',' << format_g6(rec.mu_block_used) << ','
        << cell(rec.omp_guarantee_per_sigma2) << ',' << cell(rec.omp_sigma_max) << ','
        << cell(rec.bomp_guarantee_per_sigma2) << ',' << cell(rec.bomp_sigma_max) << ','
        << format_g6(rec.crb_per_sigma2) << "\n";
  }
  return out.str();
}

namespace {

// Maps a point into the 640x480 plot frame (log10 axes).
struct LogFrame {
  double x0, x1, y0, y1;
  double px(double x) const { return 60.0 + (std::log10(x) - x0) / (x1 - x0) * 540.0; }
  double py(double y) const { return 430.0 - (std::log10(y) - y0) / (y1 - y0) * 390.0; }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts, const char* color,
                     bool dashed) {
  std::ostringstream out;
  out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dashed) out << " stroke-dasharray=\"6 4\"";
  out << " points=\"";
  for (const auto& [x, y] : pts) out << x << ',' << y << ' ';
  out << "\"/>\n";
  return out.str();
}

}  // namespace

std::string sweep_to_svg(std::span<const SweepRecord> records) {
  if (records.empty()) throw ArgumentError("svg: no records");
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& rec : records) {
    if (rec.sigma2 <= 0.0) continue;  // log axis skips exact zero
    xmin = std::min(xmin, rec.sigma2);
    xmax = std::max(xmax, rec.sigma2);
    for (double v : {rec.envelope_min, rec.envelope_max, rec.crb_value}) {
      if (v > 0.0) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
  }
  if (!(xmax > 0.0) || !(ymax > 0.0)) throw ArgumentError("svg: nothing positive to plot");
  const LogFrame frame{std::log10(xmin), std::log10(xmax) + 1e-9, std::log10(ymin) - 0.2,
                       std::log10(ymax) + 0.2};

  std::map<std::string, std::vector<const SweepRecord*>> by_algo;
  std::vector<std::string> algo_order;
  for (const auto& rec : records) {
    if (!by_algo.count(rec.algorithm)) algo_order.push_back(rec.algorithm);
    by_algo[rec.algorithm].push_back(&rec);
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" height=\"480\" "
         "viewBox=\"0 0 660 480\">\n"
      << "  <rect width=\"660\" height=\"480\" fill=\"white\"/>\n"
      << "  <line x1=\"60\" y1=\"430\" x2=\"600\" y2=\"430\" stroke=\"black\"/>\n"
      << "  <line x1=\"60\" y1=\"40\" x2=\"60\" y2=\"430\" stroke=\"black\"/>\n"
      << "  <text x=\"330\" y=\"465\" text-anchor=\"middle\" font-size=\"13\">noise variance"
         "</text>\n"
      << "  <text x=\"16\" y=\"235\" text-anchor=\"middle\" font-size=\"13\" "
         "transform=\"rotate(-90 16 235)\">median squared error</text>\n";

  // Decade ticks.
  for (int e = static_cast<int>(std::ceil(frame.x0)); e <= static_cast<int>(frame.x1); ++e) {
    const double px = frame.px(std::pow(10.0, e));
    svg << "  <line x1=\"" << px << "\" y1=\"430\" x2=\"" << px
        << "\" y2=\"435\" stroke=\"black\"/>\n"
        << "  <text x=\"" << px << "\" y=\"448\" text-anchor=\"middle\" font-size=\"11\">1e" << e
        << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(frame.y0)); e <= static_cast<int>(frame.y1); ++e) {
    const double py = frame.py(std::pow(10.0, e));
    svg << "  <line x1=\"55\" y1=\"" << py << "\" x2=\"60\" y2=\"" << py
        << "\" stroke=\"black\"/>\n"
        << "  <text x=\"50\" y=\"" << (py + 4) << "\" text-anchor=\"end\" font-size=\"11\">1e"
        << e << "</text>\n";
  }

  int color_idx = 0;
  double legend_y = 52.0;
  std::vector<std::pair<double, double>> crb_pts;
  for (const auto& algo : algo_order) {
    const char* color = kColors[color_idx++ % 5];
    std::vector<std::pair<double, double>> median_pts;
    std::ostringstream band;
    band << "  <polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
    const auto& recs = by_algo[algo];
    for (const auto* rec : recs) {
      if (rec->sigma2 <= 0.0) continue;
      median_pts.emplace_back(frame.px(rec->sigma2),
                              frame.py(std::max(rec->median_sq_errors.empty()
                                                    ? rec->envelope_min
                                                    : median_squared_error(rec->median_sq_errors),
                                                ymin)));
      band << frame.px(rec->sigma2) << ',' << frame.py(std::max(rec->envelope_max, ymin)) << ' ';
    }
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
      if ((*it)->sigma2 <= 0.0) continue;
      band << frame.px((*it)->sigma2) << ',' << frame.py(std::max((*it)->envelope_min, ymin))
           << ' ';
    }
    band << "\"/>\n";
    svg << band.str() << polyline(median_pts, color, false);
    svg << "  <rect x=\"500\" y=\"" << (legend_y - 9) << "\" width=\"18\" height=\"4\" fill=\""
        << color << "\"/>\n"
        << "  <text x=\"524\" y=\"" << legend_y << "\" font-size=\"12\">" << algo << "</text>\n";
    legend_y += 18.0;

    if (crb_pts.empty()) {
      for (const auto* rec : recs) {
        if (rec->sigma2 > 0.0 && rec->crb_value > 0.0) {
          crb_pts.emplace_back(frame.px(rec->sigma2), frame.py(rec->crb_value));
        }
      }
    }
  }
  if (!crb_pts.empty()) {
    svg << polyline(crb_pts, "#444444", true);
    svg << "  <rect x=\"500\" y=\"" << (legend_y - 9)
        << "\" width=\"18\" height=\"2\" fill=\"#444444\"/>\n"
        << "  <text x=\"524\" y=\"" << legend_y << "\" font-size=\"12\">crb</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace bsl
