#include "bsl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bsl/errors.hpp"

namespace bsl {

namespace {

using nlohmann::json;

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open for writing: " + path);
  return out;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open for reading: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ArgumentError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

Eigen::VectorXd values_from_json(const json& j, const std::string& path) {
  if (!j.contains("values") || !j["values"].is_array()) {
    throw ArgumentError(path + ": missing \"values\" array");
  }
  const auto& arr = j["values"];
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ArgumentError(path + ": non-numeric entry in \"values\"");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return v;
}

}  // namespace

void write_dictionary(const BlockedDictionary& dict, const std::string& path) {
  auto out = open_out(path);
  out << "BSL1 L=" << dict.rows() << " M=" << dict.num_blocks() << " d=" << dict.block_size()
      << "\n";
  for (int i = 0; i < dict.rows(); ++i) {
    for (int j = 0; j < dict.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_g17(dict.entries()(i, j));
    }
    out << "\n";
  }
  if (!out) throw ArgumentError("write failed: " + path);
}

BlockedDictionary read_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open for reading: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ArgumentError(path + ": empty file");
  int L = 0, M = 0, d = 0;
  if (std::sscanf(line.c_str(), "BSL1 L=%d M=%d d=%d", &L, &M, &d) != 3) {
    throw ArgumentError(path + ": bad BSL1 header: " + line);
  }
  if (L < 1 || M < 1 || d < 1) throw ArgumentError(path + ": nonpositive dimensions in header");

  const Eigen::Index n = static_cast<Eigen::Index>(M) * d;
  Eigen::MatrixXd entries(L, n);
  for (int i = 0; i < L; ++i) {
    if (!std::getline(in, line)) {
      throw ArgumentError(path + ": truncated file, expected " + std::to_string(L) + " rows");
    }
    std::istringstream row(line);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(row >> entries(i, j))) {
        throw ArgumentError(path + ": row " + std::to_string(i + 1) + " has fewer than " +
                            std::to_string(n) + " values");
      }
    }
    double extra;
    if (row >> extra) {
      throw ArgumentError(path + ": row " + std::to_string(i + 1) + " has more than " +
                          std::to_string(n) + " values");
    }
  }
  return BlockedDictionary(std::move(entries), d);
}

void write_signal(const BlockSparseVector& x, const std::string& path) {
  json j;
  j["d"] = x.block_size();
  j["values"] = std::vector<double>(x.values().data(), x.values().data() + x.values().size());
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

BlockSparseVector read_signal(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("d") || !j["d"].is_number_integer()) {
    throw ArgumentError(path + ": missing integer \"d\"");
  }
  return BlockSparseVector(values_from_json(j, path), j["d"].get<int>());
}

void write_observation(const Eigen::VectorXd& y, const std::string& path) {
  json j;
  j["values"] = std::vector<double>(y.data(), y.data() + y.size());
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

Eigen::VectorXd read_observation(const std::string& path) {
  return values_from_json(load_json(path), path);
}

json to_json(const CoherenceProfile& profile) {
  return json{{"mu", profile.mu},       {"mu_block", profile.mu_block}, {"nu", profile.nu},
              {"L", profile.L},         {"M", profile.M},               {"d", profile.d}};
}

json to_json(const EstimateResult& result) {
  json j;
  j["estimate"] = {{"d", result.estimate.block_size()},
                   {"values", std::vector<double>(result.estimate.values().data(),
                                                  result.estimate.values().data() +
                                                      result.estimate.values().size())}};
  j["selected_support"] = result.selected_support;
  j["residual_norm"] = result.residual_norm;
  j["iterations"] = result.iterations;
  return j;
}

json to_json(const GuaranteeReport& report) {
  json j;
  j["algorithm"] = report.algorithm;
  j["noise_model"] = report.noise_model;
  j["condition_holds"] = report.condition_holds;
  j["condition_margin"] = report.condition_margin;
  const auto set_opt = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  set_opt("error_bound", report.error_bound);
  set_opt("error_bound_per_sigma2", report.error_bound_per_sigma2);
  set_opt("alpha", report.alpha);
  set_opt("failure_probability_bound", report.failure_probability_bound);
  set_opt("sigma_max", report.sigma_max);
  set_opt("sigma_max_alt", report.sigma_max_alt);
  return j;
}

json to_json(const CrbResult& result) {
  json j;
  j["unbiased_estimable"] = result.unbiased_estimable;
  if (result.bound) {
    j["bound"] = *result.bound;
  } else {
    j["bound"] = nullptr;
  }
  return j;
}

}  // namespace bsl
