// bsl - block-sparse recovery toolkit command line.
//
// Subcommands: gen-dict, gen-signal, coherence, estimate, guarantee, crb,
// sweep, table. Structured results are JSON; sweeps and tables are CSV.
// Every subcommand is deterministic given its seeds; --threads only changes
// wall time, never output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bsl/bounds.hpp"
#include "bsl/coherence.hpp"
#include "bsl/dictgen.hpp"
#include "bsl/errors.hpp"
#include "bsl/estimators.hpp"
#include "bsl/experiments.hpp"
#include "bsl/io.hpp"
#include "bsl/rng.hpp"

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

constexpr const char* kPresetTable1 = R"JSON({
  "confidence": 0.99,
  "form": "lemma5",
  "xmin_block": 1.0,
  "seed": 1,
  "rows": [
    {"M": 1200, "d": 5,  "L": 3000, "k": 1, "mu": 0.10, "mu_block": 0.026, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 3000, "k": 2, "mu": 0.10, "mu_block": 0.026, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 3000, "k": 3, "mu": 0.10, "mu_block": 0.026, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 3000, "k": 4, "mu": 0.10, "mu_block": 0.026, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 3000, "k": 5, "mu": 0.10, "mu_block": 0.026, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 3000, "k": 3, "mu": 0.10, "mu_block": 0.026, "nu": 0.0},
    {"M": 600,  "d": 10, "L": 3000, "k": 3, "mu": 0.10, "mu_block": 0.015, "nu": 0.0},
    {"M": 300,  "d": 20, "L": 3000, "k": 3, "mu": 0.10, "mu_block": 0.010, "nu": 0.0},
    {"M": 200,  "d": 30, "L": 3000, "k": 3, "mu": 0.10, "mu_block": 0.007, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 3000, "k": 1, "mu": 0.10, "mu_block": 0.026, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 1000, "k": 1, "mu": 0.17, "mu_block": 0.043, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 500,  "k": 1, "mu": 0.25, "mu_block": 0.060, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 100,  "k": 1, "mu": 0.51, "mu_block": 0.133, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 50,   "k": 1, "mu": 0.71, "mu_block": 0.165, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 20,   "k": 1, "mu": 0.90, "mu_block": 0.197, "nu": 0.0},
    {"M": 1200, "d": 5,  "L": 10,   "k": 1, "mu": 0.98, "mu_block": 0.200, "nu": 0.0}
  ]
})JSON";

// Block norms 2*sqrt(5)..3*sqrt(5) for the moderate-dynamic-range sweeps;
// 0.1*sqrt(5)..sqrt(5) gives the 10-fold range.
constexpr const char* kPresetFig1 = R"JSON({
  "L": 3000, "M": 1200, "d": 5, "k": 3, "s": 3,
  "profiles": ["spike", "flat", "mixed", "random"],
  "xmin_norm": 4.47213595499958, "xmax_norm": 6.70820393249937,
  "sigma2_grid": [1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1, 3.16e-1, 1.0, 3.16],
  "trials_per_cell": 20, "num_signals": 12,
  "algorithms": ["bomp", "bth", "omp", "thr", "oracle"],
  "master_seed": 1
})JSON";

constexpr const char* kPresetFig1Small = R"JSON({
  "L": 500, "M": 200, "d": 5, "k": 3, "s": 3,
  "profiles": ["spike", "flat", "mixed", "random"],
  "xmin_norm": 4.47213595499958, "xmax_norm": 6.70820393249937,
  "sigma2_grid": [1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0],
  "trials_per_cell": 20, "num_signals": 12,
  "algorithms": ["bomp", "bth", "omp", "thr", "oracle"],
  "master_seed": 1
})JSON";

constexpr const char* kPresetFig2 = R"JSON({
  "L": 3000, "M": 1200, "d": 5, "k": 3, "s": 3,
  "profiles": ["spike", "flat", "mixed", "random"],
  "xmin_norm": 0.223606797749979, "xmax_norm": 2.23606797749979,
  "sigma2_grid": [1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1, 3.16e-1, 1.0, 3.16],
  "trials_per_cell": 20, "num_signals": 12,
  "algorithms": ["bomp", "bth"],
  "master_seed": 1
})JSON";

constexpr const char* kPresetFig2Small = R"JSON({
  "L": 500, "M": 200, "d": 5, "k": 3, "s": 3,
  "profiles": ["spike", "flat", "mixed", "random"],
  "xmin_norm": 0.223606797749979, "xmax_norm": 2.23606797749979,
  "sigma2_grid": [1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0],
  "trials_per_cell": 20, "num_signals": 12,
  "algorithms": ["bomp", "bth"],
  "master_seed": 1
})JSON";

json load_preset(const std::string& name) {
  if (name == "table1") return json::parse(kPresetTable1);
  if (name == "fig1") return json::parse(kPresetFig1);
  if (name == "fig1_small") return json::parse(kPresetFig1Small);
  if (name == "fig2") return json::parse(kPresetFig2);
  if (name == "fig2_small") return json::parse(kPresetFig2Small);
  throw bsl::ArgumentError("unknown preset: " + name +
                           " (available: table1, fig1, fig1_small, fig2, fig2_small)");
}

// ---------------------------------------------------------------------------
// Config handling
// ---------------------------------------------------------------------------

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bsl::ArgumentError("cannot open config: " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    throw bsl::ArgumentError("malformed JSON config " + path + ": " + e.what());
  }
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& context) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw bsl::ArgumentError(context + ": unknown key \"" + key + "\"");
    }
  }
}

int thread_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("BSL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // all hardware threads
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw bsl::ArgumentError("cannot open for writing: " + out_path);
  out << text;
}

void emit_json(const json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

std::vector<int> parse_support_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stoi(token));
  }
  if (out.empty()) throw bsl::ArgumentError("empty support list");
  return out;
}

// "1-5" or "1,3,7" row selection (1-based).
std::vector<std::size_t> parse_row_selection(const std::string& text, std::size_t n_rows) {
  std::vector<std::size_t> rows;
  const auto add = [&](long v) {
    if (v < 1 || static_cast<std::size_t>(v) > n_rows) {
      throw bsl::ArgumentError("row selection out of range: " + std::to_string(v));
    }
    rows.push_back(static_cast<std::size_t>(v - 1));
  };
  const auto dash = text.find('-');
  if (dash != std::string::npos && text.find(',') == std::string::npos) {
    const long a = std::stol(text.substr(0, dash));
    const long b = std::stol(text.substr(dash + 1));
    if (b < a) throw bsl::ArgumentError("bad row range: " + text);
    for (long v = a; v <= b; ++v) add(v);
    return rows;
  }
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) add(std::stol(token));
  }
  if (rows.empty()) throw bsl::ArgumentError("empty row selection");
  return rows;
}

bsl::SweepConfig sweep_config_from_json(const json& j, int threads_flag) {
  reject_unknown_keys(j, {"L", "M", "d", "k", "s", "profiles", "xmin_norm", "xmax_norm",
                          "sigma2_grid", "trials_per_cell", "num_signals", "algorithms",
                          "master_seed", "threads"},
                      "sweep config");
  bsl::SweepConfig c;
  c.L = j.at("L").get<int>();
  c.M = j.at("M").get<int>();
  c.d = j.at("d").get<int>();
  c.k = j.at("k").get<int>();
  c.s = j.at("s").get<int>();
  if (j.contains("profiles")) {
    c.profiles.clear();
    for (const auto& p : j.at("profiles")) {
      c.profiles.push_back(bsl::signal_profile_from_string(p.get<std::string>()));
    }
  }
  c.xmin_norm = j.at("xmin_norm").get<double>();
  c.xmax_norm = j.at("xmax_norm").get<double>();
  c.sigma2_grid = j.at("sigma2_grid").get<std::vector<double>>();
  if (j.contains("trials_per_cell")) c.trials_per_cell = j.at("trials_per_cell").get<int>();
  if (j.contains("num_signals")) c.num_signals = j.at("num_signals").get<int>();
  if (j.contains("algorithms")) c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
  const int json_threads = j.contains("threads") ? j.at("threads").get<int>() : 0;
  c.threads = thread_count(threads_flag > 0 ? threads_flag : json_threads);
  return c;
}

struct TableRequest {
  std::vector<bsl::TableRowSpec> rows;
  double confidence = 0.99;
  bsl::ProbabilityForm form = bsl::ProbabilityForm::lemma5;
  double xmin_block = 1.0;
  std::uint64_t seed = 1;
};

TableRequest table_request_from_json(const json& j) {
  reject_unknown_keys(j, {"rows", "confidence", "form", "xmin_block", "seed"}, "table config");
  TableRequest req;
  if (j.contains("confidence")) req.confidence = j.at("confidence").get<double>();
  if (j.contains("form")) {
    req.form = bsl::probability_form_from_string(j.at("form").get<std::string>());
  }
  if (j.contains("xmin_block")) req.xmin_block = j.at("xmin_block").get<double>();
  if (j.contains("seed")) req.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& row : j.at("rows")) {
    reject_unknown_keys(row, {"L", "M", "d", "k", "mu", "mu_block", "nu"}, "table row");
    bsl::TableRowSpec spec;
    spec.L = row.at("L").get<int>();
    spec.M = row.at("M").get<int>();
    spec.d = row.at("d").get<int>();
    spec.k = row.at("k").get<int>();
    if (row.contains("mu")) spec.mu = row.at("mu").get<double>();
    if (row.contains("mu_block")) spec.mu_block = row.at("mu_block").get<double>();
    if (row.contains("nu")) spec.nu = row.at("nu").get<double>();
    req.rows.push_back(spec);
  }
  if (req.rows.empty()) throw bsl::ArgumentError("table config: no rows");
  return req;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

struct GenDictArgs {
  int L = 0, M = 0, d = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen_dict(const GenDictArgs& a) {
  const bsl::BlockedDictionary dict = bsl::generate_dictionary(a.L, a.M, a.d, a.seed);
  bsl::write_dictionary(dict, a.out);
}

struct GenSignalArgs {
  bsl::SignalSpec spec;
  std::string profile_name = "flat";
  std::string out;
  // optional measurement emission
  std::string dict_path;
  std::string noise_name;
  double sigma = 0.0;
  double eps = 0.0;
  std::uint64_t noise_seed = 0;
  std::string obs_out;
};

void run_gen_signal(GenSignalArgs a) {
  if (a.out.empty() && a.obs_out.empty()) {
    throw bsl::ArgumentError("gen-signal: nothing to do, give --out and/or --obs-out");
  }
  a.spec.profile = bsl::signal_profile_from_string(a.profile_name);
  const bsl::BlockSparseVector x = bsl::generate_signal(a.spec);
  if (!a.out.empty()) bsl::write_signal(x, a.out);

  if (!a.obs_out.empty()) {
    if (a.dict_path.empty() || a.noise_name.empty()) {
      throw bsl::ArgumentError("gen-signal: --obs-out needs --dict and --noise");
    }
    const bsl::BlockedDictionary dict = bsl::read_dictionary(a.dict_path);
    bsl::NoiseSpec noise;
    noise.model = bsl::noise_model_from_string(a.noise_name);
    noise.sigma = a.sigma;
    noise.epsilon = a.eps;
    noise.seed = a.noise_seed;
    bsl::write_observation(bsl::measure(dict, x, noise), a.obs_out);
  }
}

void run_coherence(const std::string& dict_path, int threads, const std::string& out) {
  const bsl::BlockedDictionary dict = bsl::read_dictionary(dict_path);
  emit_json(bsl::to_json(bsl::coherence_profile(dict, thread_count(threads))), out);
}

struct EstimateArgs {
  std::string algo;
  int k = 0;
  std::string dict_path, obs_path, support, out;
};

void run_estimate(const EstimateArgs& a) {
  const bsl::BlockedDictionary dict = bsl::read_dictionary(a.dict_path);
  const Eigen::VectorXd y = bsl::read_observation(a.obs_path);
  bsl::EstimateResult result = [&] {
    if (a.algo == "bth") return bsl::bth(dict, y, a.k);
    if (a.algo == "bomp") return bsl::bomp(dict, y, a.k);
    if (a.algo == "thr") return bsl::bth(dict.reblocked_scalar(), y, a.k);
    if (a.algo == "omp") return bsl::bomp(dict.reblocked_scalar(), y, a.k);
    if (a.algo == "ml") return bsl::exhaustive_ml(dict, y, a.k);
    if (a.algo == "oracle") {
      if (a.support.empty()) throw bsl::ArgumentError("estimate: oracle needs --support");
      const std::vector<int> support = parse_support_list(a.support);
      return bsl::oracle(dict, y, support);
    }
    throw bsl::ArgumentError("estimate: unknown --algo " + a.algo);
  }();
  emit_json(bsl::to_json(result), a.out);
}

struct GuaranteeArgs {
  std::string algo = "bomp";
  std::string noise = "gauss";
  int k = 1;
  double xmin = 1.0, xmax = 1.0;
  double eps = 0.0, sigma = 0.0;
  double confidence = 0.99;
  std::string form = "lemma5";
  std::string dict_path;
  double mu = 0.0, mu_block = -1.0, nu = 0.0;
  std::string dims;  // "LxMxd"
  int threads = 0;
  std::string out;
};

void run_guarantee(const GuaranteeArgs& a) {
  bsl::CoherenceProfile profile;
  if (!a.dict_path.empty()) {
    const bsl::BlockedDictionary dict = bsl::read_dictionary(a.dict_path);
    profile = bsl::coherence_profile(dict, thread_count(a.threads));
  } else {
    if (a.mu_block < 0.0 || a.dims.empty()) {
      throw bsl::ArgumentError("guarantee: give --dict, or --mu-block with --dims LxMxd");
    }
    int L = 0, M = 0, d = 0;
    if (std::sscanf(a.dims.c_str(), "%dx%dx%d", &L, &M, &d) != 3 || L < 1 || M < 1 || d < 1) {
      throw bsl::ArgumentError("guarantee: bad --dims, expected LxMxd");
    }
    profile.L = L;
    profile.M = M;
    profile.d = d;
    profile.mu = a.mu > 0.0 ? a.mu : a.mu_block;  // mu only matters when d = 1
    profile.mu_block = a.mu_block;
    profile.nu = a.nu;
  }
  const bsl::Algo algo = bsl::algo_from_string(a.algo);
  const bsl::GuaranteeReport report = [&] {
    if (a.noise == "adv") {
      return bsl::adversarial_guarantee(profile, a.k, a.xmin, a.xmax, a.eps, algo);
    }
    if (a.noise == "gauss") {
      return bsl::gaussian_guarantee(profile, a.k, a.xmin, a.xmax, a.sigma, a.confidence, algo,
                                     bsl::probability_form_from_string(a.form));
    }
    throw bsl::ArgumentError("guarantee: unknown --noise " + a.noise + " (adv|gauss)");
  }();
  emit_json(bsl::to_json(report), a.out);
}

struct CrbArgs {
  std::string dict_path, support, out;
  int k = 0;
  double sigma2 = 1.0;
};

void run_crb(const CrbArgs& a) {
  const bsl::BlockedDictionary dict = bsl::read_dictionary(a.dict_path);
  const std::vector<int> support = parse_support_list(a.support);
  const int k = a.k > 0 ? a.k : static_cast<int>(support.size());
  emit_json(bsl::to_json(bsl::crb(dict, support, k, a.sigma2)), a.out);
}

struct SweepArgs {
  std::string preset, config_path, out, svg;
  int threads = 0;
};

void run_sweep(const SweepArgs& a) {
  if (a.preset.empty() == a.config_path.empty()) {
    throw bsl::ArgumentError("sweep: give exactly one of --preset or --config");
  }
  const json j = a.preset.empty() ? load_config_file(a.config_path) : load_preset(a.preset);
  const bsl::SweepConfig config = sweep_config_from_json(j, a.threads);
  const std::vector<bsl::SweepRecord> records = bsl::mc_sweep(config);
  emit(bsl::sweep_to_csv(records), a.out);
  if (!a.svg.empty()) emit(bsl::sweep_to_svg(records), a.svg);
}

struct TableArgs {
  std::string preset, config_path, rows, out;
  int threads = 0;
};

void run_table(const TableArgs& a) {
  if (a.preset.empty() == a.config_path.empty()) {
    throw bsl::ArgumentError("table: give exactly one of --preset or --config");
  }
  const json j = a.preset.empty() ? load_config_file(a.config_path) : load_preset(a.preset);
  TableRequest req = table_request_from_json(j);
  if (!a.rows.empty()) {
    std::vector<bsl::TableRowSpec> picked;
    for (std::size_t idx : parse_row_selection(a.rows, req.rows.size())) {
      picked.push_back(req.rows[idx]);
    }
    req.rows = std::move(picked);
  }
  const auto records = bsl::guarantee_table(req.rows, req.confidence, req.form, req.xmin_block,
                                            req.seed, thread_count(a.threads));
  emit(bsl::table_to_csv(records), a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block-sparse recovery toolkit"};
  app.require_subcommand(1);

  GenDictArgs gd;
  auto* gen_dict =
      app.add_subcommand("gen-dict", "generate a random block-orthonormal dictionary");
  gen_dict->add_option("--L", gd.L, "measurement count")->required();
  gen_dict->add_option("--M", gd.M, "number of blocks")->required();
  gen_dict->add_option("--d", gd.d, "block size")->required();
  gen_dict->add_option("--seed", gd.seed, "rng seed")->default_val(0);
  gen_dict->add_option("--out", gd.out, "output BSL1 path")->required();

  GenSignalArgs gs;
  auto* gen_signal = app.add_subcommand("gen-signal", "generate a block-sparse ground truth");
  gen_signal->add_option("--M", gs.spec.M, "number of blocks")->required();
  gen_signal->add_option("--d", gs.spec.d, "block size")->required();
  gen_signal->add_option("--s", gs.spec.s, "nonzero blocks")->required();
  gen_signal->add_option("--xmin", gs.spec.xmin_norm, "smallest block norm")->default_val(1.0);
  gen_signal->add_option("--xmax", gs.spec.xmax_norm, "largest block norm")->default_val(1.0);
  gen_signal->add_option("--profile", gs.profile_name, "spike|flat|mixed|random")
      ->default_val("flat");
  gen_signal->add_option("--seed", gs.spec.seed, "rng seed")->default_val(0);
  gen_signal->add_option("--out", gs.out, "signal JSON path");
  gen_signal->add_option("--dict", gs.dict_path, "dictionary for --obs-out");
  gen_signal->add_option("--noise", gs.noise_name, "gaussian|adv (for --obs-out)");
  gen_signal->add_option("--sigma", gs.sigma, "gaussian std dev");
  gen_signal->add_option("--eps", gs.eps, "adversarial l2 budget");
  gen_signal->add_option("--noise-seed", gs.noise_seed, "noise rng seed")->default_val(0);
  gen_signal->add_option("--obs-out", gs.obs_out, "write y = Dx + w here");

  std::string coh_dict, coh_out;
  int coh_threads = 0;
  auto* coh = app.add_subcommand("coherence", "coherence metrics of a dictionary");
  coh->add_option("--dict", coh_dict, "BSL1 dictionary path")->required();
  coh->add_option("--threads", coh_threads, "worker threads (0 = all)");
  coh->add_option("--out", coh_out, "output path (default stdout)");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "run a recovery algorithm");
  estimate->add_option("--algo", est.algo, "bth|bomp|omp|thr|oracle|ml")->required();
  estimate->add_option("--k", est.k, "sparsity (blocks; atoms for omp/thr)")->required();
  estimate->add_option("--dict", est.dict_path, "BSL1 dictionary path")->required();
  estimate->add_option("--obs", est.obs_path, "observation JSON path")->required();
  estimate->add_option("--support", est.support, "true support for oracle, e.g. 2,7,11");
  estimate->add_option("--out", est.out, "output path (default stdout)");

  GuaranteeArgs g;
  auto* guarantee = app.add_subcommand("guarantee", "evaluate a recovery guarantee");
  guarantee->add_option("--algo", g.algo, "bth|bomp")->default_val("bomp");
  guarantee->add_option("--noise", g.noise, "adv|gauss")->default_val("gauss");
  guarantee->add_option("--k", g.k, "block sparsity")->required();
  guarantee->add_option("--xmin", g.xmin, "smallest block norm")->required();
  guarantee->add_option("--xmax", g.xmax, "largest block norm")->required();
  guarantee->add_option("--eps", g.eps, "adversarial noise budget");
  guarantee->add_option("--sigma", g.sigma, "gaussian noise std dev");
  guarantee->add_option("--confidence", g.confidence, "success probability")->default_val(0.99);
  guarantee->add_option("--form", g.form, "lemma5|theorem4")->default_val("lemma5");
  guarantee->add_option("--dict", g.dict_path, "compute metrics from this dictionary");
  guarantee->add_option("--mu", g.mu, "coherence override");
  guarantee->add_option("--mu-block", g.mu_block, "block coherence");
  guarantee->add_option("--nu", g.nu, "sub-coherence")->default_val(0.0);
  guarantee->add_option("--dims", g.dims, "problem dimensions LxMxd");
  guarantee->add_option("--threads", g.threads, "worker threads for --dict metrics");
  guarantee->add_option("--out", g.out, "output path (default stdout)");

  CrbArgs cr;
  auto* crb_cmd = app.add_subcommand("crb", "Cramer-Rao bound on a given support");
  crb_cmd->add_option("--dict", cr.dict_path, "BSL1 dictionary path")->required();
  crb_cmd->add_option("--support", cr.support, "support blocks, e.g. 2,7,11")->required();
  crb_cmd->add_option("--k", cr.k, "declared sparsity (default |support|)");
  crb_cmd->add_option("--sigma2", cr.sigma2, "noise variance")->default_val(1.0);
  crb_cmd->add_option("--out", cr.out, "output path (default stdout)");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo error-vs-noise sweep (CSV)");
  sweep->add_option("--preset", sw.preset, "fig1|fig1_small|fig2|fig2_small");
  sweep->add_option("--config", sw.config_path, "sweep config JSON");
  sweep->add_option("--out", sw.out, "CSV path (default stdout)");
  sweep->add_option("--svg", sw.svg, "also write a log-log SVG plot");
  sweep->add_option("--threads", sw.threads, "worker threads (0 = all)");

  TableArgs tb;
  auto* table = app.add_subcommand("table", "guarantee table (CSV)");
  table->add_option("--preset", tb.preset, "table1");
  table->add_option("--config", tb.config_path, "table config JSON");
  table->add_option("--rows", tb.rows, "row selection, e.g. 1-5 or 2,4");
  table->add_option("--out", tb.out, "CSV path (default stdout)");
  table->add_option("--threads", tb.threads, "worker threads (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_dict) run_gen_dict(gd);
    if (*gen_signal) run_gen_signal(gs);
    if (*coh) run_coherence(coh_dict, coh_threads, coh_out);
    if (*estimate) run_estimate(est);
    if (*guarantee) run_guarantee(g);
    if (*crb_cmd) run_crb(cr);
    if (*sweep) run_sweep(sw);
    if (*table) run_table(tb);
  } catch (const bsl::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bsl::SingularityError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const bsl::SolverError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
