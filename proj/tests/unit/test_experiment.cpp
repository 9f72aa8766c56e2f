#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "tfd/errors.hpp"
#include "tfd/experiment.hpp"
#include "tfd/stream_io.hpp"

using namespace tfd;
namespace fs = std::filesystem;

namespace {

SyntheticSpec small_spec(Index k, double eta, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.dims = {80, 12, 4};
  spec.k = k;
  spec.eta = eta;
  spec.seed = {seed};
  return spec;
}

std::vector<ErrorReport> data_rows(const std::vector<ErrorReport>& rows) {
  std::vector<ErrorReport> out;
  for (const auto& r : rows) {
    if (r.repeat >= 0) out.push_back(r);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ExperimentConfigTest, Validation) {
  ExperimentConfig cfg;
  cfg.input = small_spec(3, 10.0, 1);
  EXPECT_NO_THROW(cfg.validate());
  auto bad = cfg;
  bad.ells = {0};
  EXPECT_THROW(bad.validate(), ArgumentError);
  bad = cfg;
  bad.repeats = 0;
  EXPECT_THROW(bad.validate(), ArgumentError);
  bad = cfg;
  bad.algorithms.clear();
  EXPECT_THROW(bad.validate(), ArgumentError);
  bad = cfg;
  bad.ks = {0};
  EXPECT_THROW(bad.validate(), ArgumentError);
  EXPECT_THROW(parse_algorithm("exact"), ArgumentError);
  for (Algorithm a : {Algorithm::tfd, Algorithm::mtfd, Algorithm::srtsvd, Algorithm::normsamp}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
}

TEST(Experiment, RowOrderAndMeans) {
  ExperimentConfig cfg;
  cfg.input = small_spec(3, 10.0, 2);
  cfg.algorithms = {Algorithm::tfd, Algorithm::srtsvd};
  cfg.ells = {6, 8};
  cfg.ks = {2, 3};
  cfg.repeats = 2;
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 2u * 2u * 2u * 3u);
  std::size_t i = 0;
  for (const char* alg : {"tfd", "srtsvd"}) {
    for (Index ell : {6, 8}) {
      for (Index k : {2, 3}) {
        for (int r : {0, 1, -1}) {
          EXPECT_EQ(rows[i].algorithm, alg);
          EXPECT_EQ(rows[i].ell, ell);
          EXPECT_EQ(rows[i].k, k);
          EXPECT_EQ(rows[i].repeat, r);
          ++i;
        }
        const auto& a = rows[i - 3];
        const auto& b = rows[i - 2];
        const auto& m = rows[i - 1];
        EXPECT_NEAR(m.proj_err, 0.5 * (a.proj_err + b.proj_err), 1e-12 * a.proj_err);
        EXPECT_NEAR(m.cov_err, 0.5 * (a.cov_err + b.cov_err), 1e-12 * a.cov_err);
      }
    }
  }
}

TEST(Experiment, DeterministicAlgorithmRepeatsAgree) {
  ExperimentConfig cfg;
  cfg.input = small_spec(3, 10.0, 3);
  cfg.algorithms = {Algorithm::tfd, Algorithm::mtfd};
  cfg.ells = {6};
  cfg.ks = {3};
  cfg.repeats = 10;
  const auto rows = run_experiment(cfg);
  cfg.repeats = 1;
  const auto single = data_rows(run_experiment(cfg));
  for (const auto& r : rows) {
    const auto& s = r.algorithm == "tfd" ? single[0] : single[1];
    // mean rows go through a sum of ten equal values
    EXPECT_NEAR(r.proj_err, s.proj_err, 1e-13 * s.proj_err);
    EXPECT_NEAR(r.cov_err, s.cov_err, 1e-13 * s.cov_err);
    EXPECT_EQ(r.c_value, s.c_value);
  }
}

TEST(Experiment, RandomizedRunsReproducible) {
  ExperimentConfig cfg;
  cfg.input = small_spec(3, 10.0, 4);
  cfg.algorithms = {Algorithm::srtsvd, Algorithm::normsamp};
  cfg.ells = {6};
  cfg.ks = {2};
  cfg.repeats = 3;
  cfg.seed = {99};
  const auto a = data_rows(run_experiment(cfg));
  const auto b = data_rows(run_experiment(cfg));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].proj_err, b[i].proj_err);
  // different repeats draw differently
  EXPECT_NE(a[0].proj_err, a[1].proj_err);
}

TEST(Experiment, ExactRankTfdWithinProjectionBound) {
  ExperimentConfig cfg;
  cfg.input = small_spec(3, std::numeric_limits<double>::infinity(), 5);
  cfg.ells = {8};
  cfg.ks = {3};
  const auto rows = data_rows(run_experiment(cfg));
  ASSERT_EQ(rows.size(), 1u);
  const auto& r = rows[0];
  const double c = r.c_value.value_or(1.0);
  ASSERT_LT(c * 3.0, 8.0);
  // tail is roundoff here, so compare absolute errors against the bound
  EXPECT_LE(r.proj_err, 8.0 / (8.0 - c * 3.0) * r.tail_energy + 1e-10 * 1e4);
}

TEST(Experiment, ExactRankTfdRatio) {
  ExperimentConfig cfg;
  cfg.input = small_spec(3, 1e3, 6);
  cfg.ells = {8};
  cfg.ks = {3};
  const auto r = data_rows(run_experiment(cfg))[0];
  const double c = r.c_value.value_or(1.0);
  ASSERT_LT(c * 3.0, 8.0);
  EXPECT_LE(r.proj_err_ratio, 8.0 / (8.0 - c * 3.0) + 1e-6);
  EXPECT_GE(r.proj_err_ratio, 1.0 - 1e-6);
}

TEST(Experiment, IdentitySketcherFloors) {
  ExperimentConfig cfg;
  cfg.input = small_spec(3, 10.0, 7);
  cfg.algorithms = {Algorithm::exact};
  cfg.ells = {5};
  cfg.ks = {1, 3};
  const auto rows = data_rows(run_experiment(cfg));
  for (const auto& r : rows) {
    EXPECT_LT(r.cov_err_ratio, 1e-10);
    EXPECT_NEAR(r.proj_err_ratio, 1.0, 1e-9);
  }
}

TEST(Experiment, StreamingPhaseMemory) {
  ExperimentConfig cfg;
  cfg.input = small_spec(3, 10.0, 8);
  cfg.ells = {5};
  const auto rows = data_rows(run_experiment(cfg));
  const std::int64_t n2rho = 12 * 4;
  EXPECT_GT(rows[0].peak_sketch_entries, 0);
  EXPECT_LE(rows[0].peak_sketch_entries, 3 * (2 * 5 * n2rho + n2rho));
}

TEST(Experiment, FileInputMatchesInMemory) {
  const std::string path = (fs::temp_directory_path() / "tfd_exp_input.bin").string();
  const DenseTensor a = gen_synthetic(small_spec(3, 10.0, 9)).data;
  write_tensor(path, a);
  ExperimentConfig mem;
  mem.input = small_spec(3, 10.0, 9);
  mem.algorithms = {Algorithm::tfd, Algorithm::normsamp};
  mem.ells = {6};
  mem.ks = {2};
  ExperimentConfig file = mem;
  file.input = path;
  const auto r1 = data_rows(run_experiment(mem));
  const auto r2 = data_rows(run_experiment(file));
  ASSERT_EQ(r1.size(), r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].proj_err, r2[i].proj_err);
    EXPECT_EQ(r1[i].dims, r2[i].dims);
  }
  std::remove(path.c_str());
}

TEST(Experiment, WritesCsvAndMetadata) {
  const std::string out = (fs::temp_directory_path() / "tfd_exp_out.csv").string();
  ExperimentConfig cfg;
  cfg.input = small_spec(3, 10.0, 10);
  cfg.ells = {6};
  cfg.ks = {2};
  cfg.out = out;
  run_experiment(cfg);
  const std::string csv = read_file(out);
  EXPECT_EQ(csv.rfind("algorithm,ell,k,repeat,dims,", 0), 0u);
  EXPECT_NE(csv.find("\r\n"), std::string::npos);
  const auto meta = nlohmann::json::parse(read_file(out + ".meta.json"));
  EXPECT_EQ(meta["input"]["kind"], "synthetic");
  EXPECT_EQ(meta["input"]["decay_per_slice"].size(), 4u);
  std::remove(out.c_str());
  std::remove((out + ".meta.json").c_str());
}

TEST(Csv, GoldenFile) {
  std::vector<ErrorReport> rows(2);
  rows[0].algorithm = "tfd";
  rows[0].ell = 10;
  rows[0].k = 5;
  rows[0].repeat = 0;
  rows[0].dims = {100, 20, 6};
  rows[0].c_value = 1.25;
  rows[0].delta_total = 3.5;
  rows[0].proj_err = 12.0;
  rows[0].cov_err = 0.75;
  rows[0].tail_energy = 10.0;
  rows[0].proj_err_ratio = 1.2;
  rows[0].cov_err_ratio = 0.075;
  rows[0].sketch_time_s = 0.5;
  rows[0].io_time_s = 0.25;
  rows[0].oracle_time_s = 2.0;
  rows[0].peak_sketch_entries = 6120;
  rows[1] = rows[0];
  rows[1].algorithm = "normsamp";
  rows[1].repeat = -1;
  rows[1].c_value.reset();
  rows[1].dims = {8, 3, 2, 2};
  std::ostringstream got;
  write_csv(got, rows);
  EXPECT_EQ(got.str(), read_file(std::string(TFD_TEST_DATA_DIR) + "/experiment_golden.csv"));
  EXPECT_EQ(csv_columns().size(), 16u);
}
