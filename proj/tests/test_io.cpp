#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <unistd.h>

#include "bsl/dictgen.hpp"
#include "bsl/errors.hpp"
#include "bsl/io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("bsl-io-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("BSL1 dictionaries round-trip bit-exactly") {
  TempDir tmp;
  const bsl::BlockedDictionary dict = bsl::generate_dictionary(9, 4, 2, 17);
  const std::string path = tmp.file("d.bsl");
  bsl::write_dictionary(dict, path);
  const bsl::BlockedDictionary back = bsl::read_dictionary(path);
  CHECK(back.block_size() == 2);
  CHECK(back.num_blocks() == 4);
  CHECK((back.entries() - dict.entries()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("BSL1 reader rejects malformed input") {
  TempDir tmp;
  const std::string path = tmp.file("bad.bsl");

  write_text(path, "BSLX L=2 M=1 d=2\n1 0\n0 1\n");
  CHECK_THROWS_AS(bsl::read_dictionary(path), bsl::ArgumentError);

  write_text(path, "BSL1 L=3 M=1 d=2\n1 0\n0 1\n");  // truncated: promises 3 rows
  CHECK_THROWS_AS(bsl::read_dictionary(path), bsl::ArgumentError);

  write_text(path, "BSL1 L=2 M=1 d=2\n1 0 0\n0 1 0\n");  // too many columns
  CHECK_THROWS_AS(bsl::read_dictionary(path), bsl::ArgumentError);

  write_text(path, "BSL1 L=2 M=2 d=2\n1 0\n0 1\n");  // row shorter than M*d
  CHECK_THROWS_AS(bsl::read_dictionary(path), bsl::ArgumentError);

  write_text(path, "BSL1 L=2 M=1 d=2\n2 0\n0 1\n");  // non-unit atom
  CHECK_THROWS_AS(bsl::read_dictionary(path), bsl::ArgumentError);
}

TEST_CASE("signal and observation files round-trip") {
  TempDir tmp;
  bsl::SignalSpec spec;
  spec.M = 6;
  spec.d = 3;
  spec.s = 2;
  spec.xmin_norm = 1.0;
  spec.xmax_norm = 2.5;
  spec.profile = bsl::SignalProfile::random;
  spec.seed = 5;
  const bsl::BlockSparseVector x = bsl::generate_signal(spec);

  const std::string spath = tmp.file("x.json");
  bsl::write_signal(x, spath);
  const bsl::BlockSparseVector back = bsl::read_signal(spath);
  CHECK(back.block_size() == 3);
  CHECK((back.values() - x.values()).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd y(4);
  y << 0.25, -1.5, 3.0, 1e-17;
  const std::string opath = tmp.file("y.json");
  bsl::write_observation(y, opath);
  CHECK((bsl::read_observation(opath) - y).cwiseAbs().maxCoeff() == 0.0);

  write_text(opath, "{\"values\": [1, \"two\"]}");
  CHECK_THROWS_AS(bsl::read_observation(opath), bsl::ArgumentError);
  write_text(opath, "{}");
  CHECK_THROWS_AS(bsl::read_observation(opath), bsl::ArgumentError);
}

TEST_CASE("coherence JSON carries the documented keys") {
  bsl::CoherenceProfile p;
  p.mu = 0.5;
  p.mu_block = 0.25;
  p.nu = 0.1;
  p.L = 10;
  p.M = 4;
  p.d = 2;
  const nlohmann::json j = bsl::to_json(p);
  CHECK(j.size() == 6);
  CHECK(j.at("mu") == 0.5);
  CHECK(j.at("mu_block") == 0.25);
  CHECK(j.at("nu") == 0.1);
  CHECK(j.at("L") == 10);
  CHECK(j.at("M") == 4);
  CHECK(j.at("d") == 2);
}

TEST_CASE("guarantee report JSON omits absent bounds") {
  bsl::GuaranteeReport r;
  r.algorithm = "bomp";
  r.noise_model = "gaussian";
  r.condition_holds = false;
  r.condition_margin = -0.5;
  const nlohmann::json j = bsl::to_json(r);
  CHECK_FALSE(j.contains("error_bound"));
  CHECK(j.at("condition_holds") == false);

  r.condition_holds = true;
  r.error_bound = 1.25;
  CHECK(bsl::to_json(r).at("error_bound") == 1.25);
}
