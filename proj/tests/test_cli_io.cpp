#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "xpmlab/commands.hpp"
#include "xpmlab/config.hpp"
#include "xpmlab/errors.hpp"
#include "xpmlab/version.hpp"

using namespace xpmlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("xpmlab_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

// Small grid + one lossless module: fast and bit-exact for golden checks.
const char* kTinyConfig = R"({
  "grid": {"n_samples": 4096, "dt_fs": 4.0},
  "signal": {"chirp_fs_per_nm": 0.0},
  "cascade": {"modules": [{"energy_nj": 0.0, "insertion_loss_db": 0.0}]},
  "scan": {"delays_ps": [[-0.5, 0.0, 0.5]], "energies_nj": [[50.0]]}
})";

} // namespace

TEST_CASE("parse_config: minimal document materializes every default") {
  const ExperimentConfig cfg = parse_config("{}");
  CHECK(cfg.signal.fwhm_bandwidth_thz == 2.6);
  CHECK(cfg.grid.n_samples == 16384);
  CHECK(cfg.grid.dt_fs == 2.0);
  REQUIRE(cfg.cascade.modules.size() == 2);
  CHECK(cfg.cascade.modules[0].insertion_loss_db == 2.27);
  CHECK(cfg.cascade.modules[1].insertion_loss_db == 0.62);
  CHECK(cfg.cascade.modules[0].fwhm_duration_fs == 1766.0);
  CHECK(cfg.spectrometer.dispersion_ns_per_nm == 1.033);
  CHECK(cfg.spectrometer.jitter_fwhm_ps == 100.0);
  CHECK(cfg.counting.rep_rate_khz == 200.0);
  CHECK(cfg.counting.integration_time_s == 30.0);
  CHECK(cfg.counting.herald_prob * cfg.counting.detection_eff == doctest::Approx(1e-3));
  CHECK(cfg.counting.repetitions == 20);
  CHECK(cfg.rng_seed == 12345);
  CHECK(cfg.scan.energies_nj[0] == std::vector<double>{25.0, 50.0, 75.0, 100.0});
  CHECK(cfg.objective.energy_bounds_nj[1] == 120.0);
  CHECK(cfg.objective.delay_bounds_ps[0] == -2.0);

  const std::string echoed = serialize_config(cfg);
  CHECK(echoed.find("\"fwhm_bandwidth_thz\": 2.6") != std::string::npos);
}

TEST_CASE("parse_config: round trip is idempotent") {
  const ExperimentConfig cfg = parse_config(kTinyConfig);
  const std::string once = serialize_config(cfg);
  const std::string twice = serialize_config(parse_config(once));
  CHECK(once == twice);
}

TEST_CASE("shipped example config parses and round-trips") {
  std::ifstream in(std::string(XPMLAB_SOURCE_DIR) + "/docs/config.example.json");
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  const ExperimentConfig cfg = parse_config(ss.str());
  CHECK(cfg.cascade.modules[0].energy_nj == 100.0);
  CHECK(cfg.objective.target_shift_thz == 6.46);
  const std::string once = serialize_config(cfg);
  CHECK(serialize_config(parse_config(once)) == once);
}

TEST_CASE("parse_config: rejection diagnostics name the key and constraint") {
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_config(
                           R"({"cascade": {"modules": [{"energy_nj": -5.0}]}})")),
                       doctest::Contains("energy_nj"), ConfigError);
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_config(
                           R"({"cascade": {"modules": [{}, {}, {}]}})")),
                       doctest::Contains("{1,2}"), ConfigError);
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_config(R"({"grd": {}})")),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_config(R"({"objective": {"kind": "wat"}})")),
                       doctest::Contains("objective.kind"), ConfigError);
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_config("{\n  \"grid\": oops\n}")),
                       doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_config(
                           R"({"scan": {"delays_ps": [[0.0]]}})")),
                       doctest::Contains("per cascade module"), ConfigError);
}

TEST_CASE("cmd_simulate: zero-energy cascade echoes the input spectrum file") {
  TempDir dir("simulate");
  const ExperimentConfig cfg = parse_config(kTinyConfig);
  const auto written = cmd_simulate(cfg, dir.str());
  REQUIRE(written.size() == 3);
  const std::string in_file = slurp(written[0]);
  const std::string out_file = slurp(written[1]);
  CHECK(in_file == out_file);
  CHECK(in_file.rfind(std::string("# xpmlab ") + kVersion, 0) == 0);
  CHECK(in_file.find("# config: {") != std::string::npos);
}

TEST_CASE("cmd_simulate: byte-identical across runs (golden determinism)") {
  TempDir dir_a("golden_a");
  TempDir dir_b("golden_b");
  ExperimentConfig cfg = parse_config(kTinyConfig);
  cfg.cascade.modules[0].energy_nj = 80.0;
  cfg.cascade.modules[0].delay_ps = 0.6;
  const auto wrote_a = cmd_simulate(cfg, dir_a.str());
  const auto wrote_b = cmd_simulate(cfg, dir_b.str());
  REQUIRE(wrote_a.size() == wrote_b.size());
  for (std::size_t i = 0; i < wrote_a.size(); ++i)
    CHECK(slurp(wrote_a[i]) == slurp(wrote_b[i]));
}

TEST_CASE("cmd_scan: one matrix per energy combo plus a summary") {
  TempDir dir("scan");
  const ExperimentConfig cfg = parse_config(kTinyConfig);
  const auto written = cmd_scan(cfg, dir.str());
  REQUIRE(written.size() == 2);
  CHECK(written[0].find("scan_matrix_E50nJ.tsv") != std::string::npos);
  const std::string matrix = slurp(written[0]);
  CHECK(matrix.find("# frequency_axis_thz:") != std::string::npos);
  int data_rows = 0;
  std::istringstream lines(matrix);
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#') ++data_rows;
  CHECK(data_rows == 3);

  const std::string summary = slurp(written[1]);
  CHECK(summary.find("E50 dt-0.5") != std::string::npos);
}

TEST_CASE("cmd_scan: default config produces the four-energy matrix set") {
  TempDir dir("scan_default");
  const auto written = cmd_scan(parse_config("{}"), dir.str());
  REQUIRE(written.size() == 5); // 25/50/75/100 nJ matrices + summary
  CHECK(written[0].find("scan_matrix_E25_0nJ.tsv") != std::string::npos);
  CHECK(written[3].find("scan_matrix_E100_0nJ.tsv") != std::string::npos);
}

TEST_CASE("cmd_counts: repetitions, pooled outputs, determinism") {
  TempDir dir_a("counts_a");
  TempDir dir_b("counts_b");
  ExperimentConfig cfg = parse_config(R"({
    "grid": {"n_samples": 4096, "dt_fs": 4.0},
    "cascade": {"modules": [{"energy_nj": 0.0, "insertion_loss_db": 0.0}]},
    "counting": {"rep_rate_khz": 10.0, "integration_time_s": 0.1,
                  "herald_prob": 0.5, "detection_eff": 1.0,
                  "noise_per_pulse": 0.001, "repetitions": 2}
  })");
  const auto written = cmd_counts(cfg, dir_a.str());
  // 2 x (histogram + reconstructed) + pooled pair + summary.
  REQUIRE(written.size() == 7);
  CHECK(slurp(written[0]).find("# total_pulses: 1000") != std::string::npos);

  const auto again = cmd_counts(cfg, dir_b.str());
  for (std::size_t i = 0; i < written.size(); ++i)
    CHECK(slurp(written[i]) == slurp(again[i]));

  cfg.rng_seed = 999; // seed change must reach the histograms
  TempDir dir_c("counts_c");
  const auto reseeded = cmd_counts(cfg, dir_c.str());
  CHECK(slurp(written[0]) != slurp(reseeded[0]));
}

TEST_CASE("cmd_shift writes the optimization record and spectra") {
  TempDir dir("shift");
  ExperimentConfig cfg = parse_config(R"({
    "grid": {"n_samples": 4096, "dt_fs": 4.0},
    "objective": {"kind": "shift", "target_shift_thz": 1.0}
  })");
  const auto written = cmd_shift(cfg, dir.str());
  REQUIRE(written.size() == 4);
  const std::string record = slurp(written[0]);
  CHECK(record.find("# best:") != std::string::npos);
  CHECK(record.find("# trace columns:") != std::string::npos);
  CHECK(fs::exists(written[3])); // target_spectrum.tsv for shift mode
}
