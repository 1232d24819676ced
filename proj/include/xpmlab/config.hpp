#ifndef XPMLAB_CONFIG_HPP
#define XPMLAB_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xpmlab/field.hpp"
#include "xpmlab/scan.hpp"
#include "xpmlab/tof.hpp"
#include "xpmlab/xpm.hpp"

namespace xpmlab {

// Experiment configuration, parsed from a JSON document (schema documented in
// the README with a full annotated example). Parsing fills every default, so
// serialize(parse(text)) echoes the complete resolved configuration; unknown
// keys and constraint violations are rejected with the offending key path.

struct GridSettings {
  std::size_t n_samples = 16384;
  double dt_fs = 2.0;
  double t0_fs = 0.0;
};

struct SignalSettings {
  double carrier_wavelength_nm = 1550.0;
  double fwhm_bandwidth_thz = 2.6;
  double chirp_fs_per_nm = 4.0; // converted via units::convert_gdd
  double center_time_fs = 0.0;
  double total_power_photons = 1.0;
};

struct ModuleSettings {
  double energy_nj = 0.0;
  double fwhm_duration_fs = 1766.0;
  double center_wavelength_nm = 1030.0;
  double delay_ps = 0.0;
  std::optional<double> kappa_rad_per_w; // empty -> default_kappa()
  double insertion_loss_db = 0.0;
  double walkoff_fs = 0.0;
  bool pump_spm = false;
  double pump_gvd_fs2 = 0.0;
};

struct CascadeSettings {
  std::vector<ModuleSettings> modules; // defaulted to the two-module chain
  double inter_module_gdd_fs2 = 0.0;
};

struct CountingSettings {
  double rep_rate_khz = 200.0;
  double integration_time_s = 30.0;
  double herald_prob = 0.01;
  double detection_eff = 0.1;
  double noise_per_pulse = 1e-5;
  std::size_t repetitions = 20;
};

struct ScanSettings {
  std::vector<std::vector<double>> delays_ps;   // per module
  std::vector<std::vector<double>> energies_nj; // per module
  bool noiseless = true;
};

struct ObjectiveSettings {
  std::string kind = "shift"; // "shift" | "bandwidth"
  double target_shift_thz = 3.3;
  double target_fwhm_thz = 2.6;
  double center_penalty_weight = 1.0;
  std::array<double, 2> energy_bounds_nj{0.0, 120.0};
  std::array<double, 2> delay_bounds_ps{-2.0, 2.0};
};

struct ExperimentConfig {
  GridSettings grid;
  SignalSettings signal;
  CascadeSettings cascade;
  SpectrometerConfig spectrometer;
  CountingSettings counting;
  ScanSettings scan;
  ObjectiveSettings objective;
  std::uint64_t rng_seed = 12345;
  std::string output_dir = "out";
};

/// Parse + validate a JSON document; throws ConfigError naming the key and
/// constraint (parse errors carry the line number).
ExperimentConfig parse_config(const std::string& text);

/// Canonical echo with every default materialized; parse(serialize(x)) == x.
std::string serialize_config(const ExperimentConfig& cfg);

/// Single-line variant for output-file headers.
std::string serialize_config_compact(const ExperimentConfig& cfg);

// Translation into domain objects.
TimeGrid make_grid(const ExperimentConfig& cfg);
FieldEnvelope make_signal(const ExperimentConfig& cfg);
CascadeConfig make_cascade(const ExperimentConfig& cfg);
CountingConfig make_counting(const ExperimentConfig& cfg);
ScanSpec make_scan_spec(const ExperimentConfig& cfg);
ObjectiveSpec make_objective(const ExperimentConfig& cfg);

} // namespace xpmlab

#endif // XPMLAB_CONFIG_HPP
