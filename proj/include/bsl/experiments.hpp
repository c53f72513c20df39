#ifndef BSL_EXPERIMENTS_HPP
#define BSL_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsl/bounds.hpp"
#include "bsl/dictgen.hpp"

namespace bsl {

/// Monte Carlo sweep over noise variances. The dictionary is generated once
/// from master_seed; each (signal, sigma2, trial) cell is seeded independently
/// so cells are reproducible and parallelizable. Scalar algorithms (omp, thr)
/// run on the same data reinterpreted with block size 1 and sparsity k*d.
struct SweepConfig {
  int L = 0, M = 0, d = 0;
  int k = 0, s = 0;
  std::vector<SignalProfile> profiles{SignalProfile::spike, SignalProfile::flat,
                                      SignalProfile::mixed, SignalProfile::random};
  double xmin_norm = 1.0;
  double xmax_norm = 1.0;
  std::vector<double> sigma2_grid;
  int trials_per_cell = 20;
  int num_signals = 12;
  std::vector<std::string> algorithms{"bth", "bomp", "omp", "thr", "oracle"};
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0 = all hardware threads
};

/// One (algorithm, sigma2) aggregate: the median squared error per signal,
/// the envelope of those medians, the mean CRB reference and support-recovery
/// rates (overall and per signal).
struct SweepRecord {
  std::string algorithm;
  double sigma2 = 0.0;
  std::vector<double> median_sq_errors;
  double envelope_min = 0.0;
  double envelope_max = 0.0;
  double crb_value = 0.0;
  double support_recovery_rate = 0.0;
  std::vector<double> per_signal_support_rate;
  std::vector<double> per_signal_crb;
};

std::vector<SweepRecord> mc_sweep(const SweepConfig& config);

// Order statistic; even-length lists average the two central values.
double median_squared_error(std::span<const double> errors);

/// One guarantee-table row request: dimensions plus optional measured-metric
/// overrides (when absent, metrics are computed from the generated dictionary).
struct TableRowSpec {
  int L = 0, M = 0, d = 0, k = 0;
  std::optional<double> mu;
  std::optional<double> mu_block;
  std::optional<double> nu;
};

struct TableRecord {
  TableRowSpec row;
  double mu_used = 0.0;
  double mu_block_used = 0.0;
  double nu_used = 0.0;
  std::optional<double> omp_guarantee_per_sigma2;
  std::optional<double> omp_sigma_max;
  std::optional<double> bomp_guarantee_per_sigma2;
  std::optional<double> bomp_sigma_max;
  double crb_per_sigma2 = 0.0;
};

/// Gaussian guarantees for OMP (scalar view, sparsity k*d, minimum nonzero
/// entry xmin_block/sqrt(d)) and BOMP (block view, minimum block norm
/// xmin_block) at the given confidence, plus the CRB for a uniformly drawn
/// size-k support of a dictionary generated at the row's dimensions.
std::vector<TableRecord> guarantee_table(std::span<const TableRowSpec> rows,
                                         double confidence = 0.99,
                                         ProbabilityForm form = ProbabilityForm::lemma5,
                                         double xmin_block = 1.0, std::uint64_t seed = 1,
                                         int threads = 0);

// CSV emission. Sweep columns:
//   algo,signal_id,sigma2,median_sq_err,min_sq_err,max_sq_err,crb,support_rate
// (min/max are the envelope across signals). Table columns mirror the
// guarantee-table layout; unsatisfiable guarantees print "---".
std::string sweep_to_csv(std::span<const SweepRecord> records);
std::string table_to_csv(std::span<const TableRecord> records);

// Log-log median-vs-sigma2 plot with the CRB dashed; static SVG, no scripting.
std::string sweep_to_svg(std::span<const SweepRecord> records);

}  // namespace bsl

#endif  // BSL_EXPERIMENTS_HPP
