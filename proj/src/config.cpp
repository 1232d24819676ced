#include "xpmlab/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "xpmlab/errors.hpp"
#include "xpmlab/units.hpp"

namespace xpmlab {

namespace {

using Json = nlohmann::ordered_json;

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Object reader that rejects unknown keys and reports full key paths.
class Reader {
public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
      throw ConfigError(path_ + ": expected an object");
  }

  ~Reader() = default;

  void finish(const std::set<std::string>& allowed) const {
    for (const auto& item : j_.items())
      if (allowed.find(item.key()) == allowed.end())
        throw ConfigError(path_ + "." + item.key() + ": unknown key");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& raw(const std::string& key) const { return j_.at(key); }

  std::string key_path(const std::string& key) const { return path_ + "." + key; }

  double number(const std::string& key, double fallback) const {
    if (!j_.contains(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number())
      throw ConfigError(key_path(key) + ": expected a number");
    return v.get<double>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!j_.contains(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_boolean())
      throw ConfigError(key_path(key) + ": expected a boolean");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!j_.contains(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_string())
      throw ConfigError(key_path(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) const {
    if (!j_.contains(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number_integer() || v.get<double>() < 0)
      throw ConfigError(key_path(key) + ": expected a nonnegative integer");
    return v.get<std::uint64_t>();
  }

private:
  const Json& j_;
  std::string path_;
};

void require(bool ok, const std::string& key, const std::string& constraint) {
  if (!ok) throw ConfigError(key + ": " + constraint);
}

std::array<double, 2> bounds_pair(const Reader& r, const std::string& key,
                                  std::array<double, 2> fallback) {
  if (!r.has(key)) return fallback;
  const Json& v = r.raw(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(r.key_path(key) + ": expected [lo, hi]");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<std::vector<double>> number_lists(const Reader& r, const std::string& key,
                                              std::vector<std::vector<double>> fallback) {
  if (!r.has(key)) return fallback;
  const Json& v = r.raw(key);
  if (!v.is_array())
    throw ConfigError(r.key_path(key) + ": expected a list of per-module lists");
  std::vector<std::vector<double>> out;
  for (std::size_t m = 0; m < v.size(); ++m) {
    const Json& inner = v[m];
    if (!inner.is_array() || inner.empty())
      throw ConfigError(r.key_path(key) + "[" + std::to_string(m) +
                        "]: expected a nonempty list of numbers");
    std::vector<double> list;
    for (const auto& x : inner) {
      if (!x.is_number())
        throw ConfigError(r.key_path(key) + "[" + std::to_string(m) +
                          "]: expected a nonempty list of numbers");
      list.push_back(x.get<double>());
    }
    out.push_back(std::move(list));
  }
  return out;
}

std::vector<ModuleSettings> default_modules() {
  ModuleSettings first;
  first.insertion_loss_db = 2.27;
  ModuleSettings second;
  second.insertion_loss_db = 0.62;
  return {first, second};
}

std::vector<double> default_scan_delays() {
  std::vector<double> d(61);
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = -2.0 + 4.0 * static_cast<double>(i) / 60.0;
  return d;
}

ModuleSettings parse_module(const Json& j, const std::string& path) {
  Reader r(j, path);
  ModuleSettings m;
  m.energy_nj = r.number("energy_nj", m.energy_nj);
  m.fwhm_duration_fs = r.number("fwhm_duration_fs", m.fwhm_duration_fs);
  m.center_wavelength_nm = r.number("center_wavelength_nm", m.center_wavelength_nm);
  m.delay_ps = r.number("delay_ps", m.delay_ps);
  if (r.has("kappa_rad_per_w") && !r.raw("kappa_rad_per_w").is_null())
    m.kappa_rad_per_w = r.number("kappa_rad_per_w", 0.0);
  m.insertion_loss_db = r.number("insertion_loss_db", m.insertion_loss_db);
  m.walkoff_fs = r.number("walkoff_fs", m.walkoff_fs);
  m.pump_spm = r.boolean("pump_spm", m.pump_spm);
  m.pump_gvd_fs2 = r.number("pump_gvd_fs2", m.pump_gvd_fs2);
  r.finish({"energy_nj", "fwhm_duration_fs", "center_wavelength_nm", "delay_ps",
            "kappa_rad_per_w", "insertion_loss_db", "walkoff_fs", "pump_spm",
            "pump_gvd_fs2"});

  require(m.energy_nj >= 0.0, path + ".energy_nj", "must be >= 0 nJ");
  require(m.fwhm_duration_fs > 0.0, path + ".fwhm_duration_fs", "must be > 0 fs");
  require(m.center_wavelength_nm > 0.0, path + ".center_wavelength_nm", "must be > 0 nm");
  require(!m.kappa_rad_per_w || *m.kappa_rad_per_w >= 0.0, path + ".kappa_rad_per_w",
          "must be >= 0 rad/W");
  require(m.insertion_loss_db >= 0.0, path + ".insertion_loss_db", "must be >= 0 dB");
  require(m.walkoff_fs >= 0.0, path + ".walkoff_fs", "must be >= 0 fs");
  return m;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error at line " +
                      std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }

  Reader root(j, "config");
  ExperimentConfig cfg;

  if (root.has("grid")) {
    Reader r(root.raw("grid"), "grid");
    cfg.grid.n_samples = static_cast<std::size_t>(
        r.unsigned_int("n_samples", cfg.grid.n_samples));
    cfg.grid.dt_fs = r.number("dt_fs", cfg.grid.dt_fs);
    cfg.grid.t0_fs = r.number("t0_fs", cfg.grid.t0_fs);
    r.finish({"n_samples", "dt_fs", "t0_fs"});
    require(cfg.grid.n_samples >= 2 && (cfg.grid.n_samples & (cfg.grid.n_samples - 1)) == 0,
            "grid.n_samples", "must be a power of two >= 2");
    require(cfg.grid.dt_fs > 0.0, "grid.dt_fs", "must be > 0 fs");
  }

  if (root.has("signal")) {
    Reader r(root.raw("signal"), "signal");
    cfg.signal.carrier_wavelength_nm =
        r.number("carrier_wavelength_nm", cfg.signal.carrier_wavelength_nm);
    cfg.signal.fwhm_bandwidth_thz =
        r.number("fwhm_bandwidth_thz", cfg.signal.fwhm_bandwidth_thz);
    cfg.signal.chirp_fs_per_nm = r.number("chirp_fs_per_nm", cfg.signal.chirp_fs_per_nm);
    cfg.signal.center_time_fs = r.number("center_time_fs", cfg.signal.center_time_fs);
    cfg.signal.total_power_photons =
        r.number("total_power_photons", cfg.signal.total_power_photons);
    r.finish({"carrier_wavelength_nm", "fwhm_bandwidth_thz", "chirp_fs_per_nm",
              "center_time_fs", "total_power_photons"});
    require(cfg.signal.carrier_wavelength_nm > 0.0, "signal.carrier_wavelength_nm",
            "must be > 0 nm");
    require(cfg.signal.fwhm_bandwidth_thz > 0.0, "signal.fwhm_bandwidth_thz",
            "must be > 0 THz");
    require(cfg.signal.total_power_photons >= 0.0, "signal.total_power_photons",
            "must be >= 0");
  }

  cfg.cascade.modules = default_modules();
  if (root.has("cascade")) {
    Reader r(root.raw("cascade"), "cascade");
    if (r.has("modules")) {
      const Json& mods = r.raw("modules");
      if (!mods.is_array())
        throw ConfigError("cascade.modules: expected a list");
      require(mods.size() >= 1 && mods.size() <= 2, "cascade.modules",
              "length must be in {1,2}");
      cfg.cascade.modules.clear();
      for (std::size_t m = 0; m < mods.size(); ++m)
        cfg.cascade.modules.push_back(
            parse_module(mods[m], "cascade.modules[" + std::to_string(m) + "]"));
    }
    cfg.cascade.inter_module_gdd_fs2 =
        r.number("inter_module_gdd_fs2", cfg.cascade.inter_module_gdd_fs2);
    r.finish({"modules", "inter_module_gdd_fs2"});
  }

  if (root.has("spectrometer")) {
    Reader r(root.raw("spectrometer"), "spectrometer");
    cfg.spectrometer.dispersion_ns_per_nm =
        r.number("dispersion_ns_per_nm", cfg.spectrometer.dispersion_ns_per_nm);
    cfg.spectrometer.reference_wavelength_nm =
        r.number("reference_wavelength_nm", cfg.spectrometer.reference_wavelength_nm);
    cfg.spectrometer.jitter_fwhm_ps =
        r.number("jitter_fwhm_ps", cfg.spectrometer.jitter_fwhm_ps);
    cfg.spectrometer.bin_width_ps = r.number("bin_width_ps", cfg.spectrometer.bin_width_ps);
    cfg.spectrometer.window_ps = r.number("window_ps", cfg.spectrometer.window_ps);
    r.finish({"dispersion_ns_per_nm", "reference_wavelength_nm", "jitter_fwhm_ps",
              "bin_width_ps", "window_ps"});
    try {
      cfg.spectrometer.validate();
    } catch (const ValidationError& e) {
      throw ConfigError(std::string("spectrometer: ") + e.what());
    }
  }

  if (root.has("counting")) {
    Reader r(root.raw("counting"), "counting");
    cfg.counting.rep_rate_khz = r.number("rep_rate_khz", cfg.counting.rep_rate_khz);
    cfg.counting.integration_time_s =
        r.number("integration_time_s", cfg.counting.integration_time_s);
    cfg.counting.herald_prob = r.number("herald_prob", cfg.counting.herald_prob);
    cfg.counting.detection_eff = r.number("detection_eff", cfg.counting.detection_eff);
    cfg.counting.noise_per_pulse = r.number("noise_per_pulse", cfg.counting.noise_per_pulse);
    cfg.counting.repetitions = static_cast<std::size_t>(
        r.unsigned_int("repetitions", cfg.counting.repetitions));
    r.finish({"rep_rate_khz", "integration_time_s", "herald_prob", "detection_eff",
              "noise_per_pulse", "repetitions"});
    require(cfg.counting.rep_rate_khz > 0.0, "counting.rep_rate_khz", "must be > 0 kHz");
    require(cfg.counting.integration_time_s > 0.0, "counting.integration_time_s",
            "must be > 0 s");
    require(cfg.counting.herald_prob >= 0.0 && cfg.counting.herald_prob <= 1.0,
            "counting.herald_prob", "must be in [0,1]");
    require(cfg.counting.detection_eff >= 0.0 && cfg.counting.detection_eff <= 1.0,
            "counting.detection_eff", "must be in [0,1]");
    require(cfg.counting.noise_per_pulse >= 0.0, "counting.noise_per_pulse",
            "must be >= 0 counts/pulse");
    require(cfg.counting.repetitions >= 1, "counting.repetitions", "must be >= 1");
  }

  cfg.scan.delays_ps.assign(cfg.cascade.modules.size(), {0.0});
  cfg.scan.delays_ps[0] = default_scan_delays();
  cfg.scan.energies_nj.assign(cfg.cascade.modules.size(), {0.0});
  cfg.scan.energies_nj[0] = {25.0, 50.0, 75.0, 100.0};
  if (root.has("scan")) {
    Reader r(root.raw("scan"), "scan");
    cfg.scan.delays_ps = number_lists(r, "delays_ps", cfg.scan.delays_ps);
    cfg.scan.energies_nj = number_lists(r, "energies_nj", cfg.scan.energies_nj);
    cfg.scan.noiseless = r.boolean("noiseless", cfg.scan.noiseless);
    r.finish({"delays_ps", "energies_nj", "noiseless"});
    require(cfg.scan.delays_ps.size() == cfg.cascade.modules.size(), "scan.delays_ps",
            "need exactly one list per cascade module");
    require(cfg.scan.energies_nj.size() == cfg.cascade.modules.size(), "scan.energies_nj",
            "need exactly one list per cascade module");
    for (std::size_t m = 0; m < cfg.scan.delays_ps.size(); ++m) {
      require(std::is_sorted(cfg.scan.delays_ps[m].begin(), cfg.scan.delays_ps[m].end()),
              "scan.delays_ps[" + std::to_string(m) + "]", "must be sorted");
      require(std::is_sorted(cfg.scan.energies_nj[m].begin(), cfg.scan.energies_nj[m].end()),
              "scan.energies_nj[" + std::to_string(m) + "]", "must be sorted");
      for (double e : cfg.scan.energies_nj[m])
        require(e >= 0.0, "scan.energies_nj[" + std::to_string(m) + "]",
                "energies must be >= 0 nJ");
    }
  }

  if (root.has("objective")) {
    Reader r(root.raw("objective"), "objective");
    cfg.objective.kind = r.text("kind", cfg.objective.kind);
    cfg.objective.target_shift_thz =
        r.number("target_shift_thz", cfg.objective.target_shift_thz);
    cfg.objective.target_fwhm_thz =
        r.number("target_fwhm_thz", cfg.objective.target_fwhm_thz);
    cfg.objective.center_penalty_weight =
        r.number("center_penalty_weight", cfg.objective.center_penalty_weight);
    cfg.objective.energy_bounds_nj =
        bounds_pair(r, "energy_bounds_nj", cfg.objective.energy_bounds_nj);
    cfg.objective.delay_bounds_ps =
        bounds_pair(r, "delay_bounds_ps", cfg.objective.delay_bounds_ps);
    r.finish({"kind", "target_shift_thz", "target_fwhm_thz", "center_penalty_weight",
              "energy_bounds_nj", "delay_bounds_ps"});
    require(cfg.objective.kind == "shift" || cfg.objective.kind == "bandwidth",
            "objective.kind", "must be \"shift\" or \"bandwidth\"");
    require(cfg.objective.target_fwhm_thz > 0.0, "objective.target_fwhm_thz",
            "must be > 0 THz");
    require(cfg.objective.center_penalty_weight >= 0.0, "objective.center_penalty_weight",
            "must be >= 0");
    require(cfg.objective.energy_bounds_nj[0] >= 0.0 &&
                cfg.objective.energy_bounds_nj[1] > cfg.objective.energy_bounds_nj[0],
            "objective.energy_bounds_nj", "must satisfy 0 <= lo < hi");
    require(cfg.objective.delay_bounds_ps[1] > cfg.objective.delay_bounds_ps[0],
            "objective.delay_bounds_ps", "must satisfy lo < hi");
  }

  cfg.rng_seed = root.unsigned_int("rng_seed", cfg.rng_seed);
  cfg.output_dir = root.text("output_dir", cfg.output_dir);

  root.finish({"grid", "signal", "cascade", "spectrometer", "counting", "scan",
               "objective", "rng_seed", "output_dir"});

  // Cross-checks that need the whole document.
  require(cfg.signal.fwhm_bandwidth_thz >=
              4.0 * units::inv_fs_to_thz /
                  (static_cast<double>(cfg.grid.n_samples) * cfg.grid.dt_fs),
          "signal.fwhm_bandwidth_thz", "unresolvable on the configured grid");
  return cfg;
}

namespace {

Json module_to_json(const ModuleSettings& m) {
  Json j;
  j["energy_nj"] = m.energy_nj;
  j["fwhm_duration_fs"] = m.fwhm_duration_fs;
  j["center_wavelength_nm"] = m.center_wavelength_nm;
  j["delay_ps"] = m.delay_ps;
  if (m.kappa_rad_per_w)
    j["kappa_rad_per_w"] = *m.kappa_rad_per_w;
  else
    j["kappa_rad_per_w"] = nullptr;
  j["insertion_loss_db"] = m.insertion_loss_db;
  j["walkoff_fs"] = m.walkoff_fs;
  j["pump_spm"] = m.pump_spm;
  j["pump_gvd_fs2"] = m.pump_gvd_fs2;
  return j;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["grid"] = {{"n_samples", cfg.grid.n_samples},
               {"dt_fs", cfg.grid.dt_fs},
               {"t0_fs", cfg.grid.t0_fs}};
  j["signal"] = {{"carrier_wavelength_nm", cfg.signal.carrier_wavelength_nm},
                 {"fwhm_bandwidth_thz", cfg.signal.fwhm_bandwidth_thz},
                 {"chirp_fs_per_nm", cfg.signal.chirp_fs_per_nm},
                 {"center_time_fs", cfg.signal.center_time_fs},
                 {"total_power_photons", cfg.signal.total_power_photons}};
  Json modules = Json::array();
  for (const auto& m : cfg.cascade.modules) modules.push_back(module_to_json(m));
  j["cascade"] = {{"modules", modules},
                  {"inter_module_gdd_fs2", cfg.cascade.inter_module_gdd_fs2}};
  j["spectrometer"] = {
      {"dispersion_ns_per_nm", cfg.spectrometer.dispersion_ns_per_nm},
      {"reference_wavelength_nm", cfg.spectrometer.reference_wavelength_nm},
      {"jitter_fwhm_ps", cfg.spectrometer.jitter_fwhm_ps},
      {"bin_width_ps", cfg.spectrometer.bin_width_ps},
      {"window_ps", cfg.spectrometer.window_ps}};
  j["counting"] = {{"rep_rate_khz", cfg.counting.rep_rate_khz},
                   {"integration_time_s", cfg.counting.integration_time_s},
                   {"herald_prob", cfg.counting.herald_prob},
                   {"detection_eff", cfg.counting.detection_eff},
                   {"noise_per_pulse", cfg.counting.noise_per_pulse},
                   {"repetitions", cfg.counting.repetitions}};
  j["scan"] = {{"delays_ps", cfg.scan.delays_ps},
               {"energies_nj", cfg.scan.energies_nj},
               {"noiseless", cfg.scan.noiseless}};
  j["objective"] = {{"kind", cfg.objective.kind},
                    {"target_shift_thz", cfg.objective.target_shift_thz},
                    {"target_fwhm_thz", cfg.objective.target_fwhm_thz},
                    {"center_penalty_weight", cfg.objective.center_penalty_weight},
                    {"energy_bounds_nj", cfg.objective.energy_bounds_nj},
                    {"delay_bounds_ps", cfg.objective.delay_bounds_ps}};
  j["rng_seed"] = cfg.rng_seed;
  j["output_dir"] = cfg.output_dir;
  return j;
}

} // namespace

std::string serialize_config(const ExperimentConfig& cfg) {
  return config_to_json(cfg).dump(2) + "\n";
}

std::string serialize_config_compact(const ExperimentConfig& cfg) {
  return config_to_json(cfg).dump();
}

TimeGrid make_grid(const ExperimentConfig& cfg) {
  return TimeGrid(cfg.grid.n_samples, cfg.grid.dt_fs, cfg.grid.t0_fs);
}

FieldEnvelope make_signal(const ExperimentConfig& cfg) {
  const double carrier = units::frequency_thz(cfg.signal.carrier_wavelength_nm);
  const double gdd =
      units::convert_gdd(cfg.signal.chirp_fs_per_nm, cfg.signal.carrier_wavelength_nm);
  return make_gaussian_pulse(make_grid(cfg), carrier, cfg.signal.fwhm_bandwidth_thz, gdd,
                             cfg.signal.center_time_fs, cfg.signal.total_power_photons);
}

CascadeConfig make_cascade(const ExperimentConfig& cfg) {
  CascadeConfig cascade;
  cascade.inter_module_gdd_fs2 = cfg.cascade.inter_module_gdd_fs2;
  for (const auto& m : cfg.cascade.modules) {
    XpmModuleConfig mod;
    mod.pump.energy_nj = m.energy_nj;
    mod.pump.fwhm_fs = m.fwhm_duration_fs;
    mod.pump.center_wavelength_nm = m.center_wavelength_nm;
    mod.pump.delay_ps = m.delay_ps;
    mod.kappa_rad_per_w = m.kappa_rad_per_w ? *m.kappa_rad_per_w : default_kappa();
    mod.insertion_loss_db = m.insertion_loss_db;
    mod.walkoff_fs = m.walkoff_fs;
    mod.pump_spm = m.pump_spm;
    mod.pump_gvd_fs2 = m.pump_gvd_fs2;
    cascade.modules.push_back(mod);
  }
  cascade.validate();
  return cascade;
}

CountingConfig make_counting(const ExperimentConfig& cfg) {
  CountingConfig c;
  c.rep_rate_khz = cfg.counting.rep_rate_khz;
  c.integration_time_s = cfg.counting.integration_time_s;
  c.herald_prob = cfg.counting.herald_prob;
  c.detection_eff = cfg.counting.detection_eff;
  c.noise_per_pulse = cfg.counting.noise_per_pulse;
  c.rng_seed = cfg.rng_seed;
  return c;
}

ScanSpec make_scan_spec(const ExperimentConfig& cfg) {
  ScanSpec spec;
  spec.cascade = make_cascade(cfg);
  spec.delays_ps = cfg.scan.delays_ps;
  spec.energies_nj = cfg.scan.energies_nj;
  spec.noiseless = cfg.scan.noiseless;
  spec.spectrometer = cfg.spectrometer;
  spec.counting = make_counting(cfg);
  return spec;
}

ObjectiveSpec make_objective(const ExperimentConfig& cfg) {
  ObjectiveSpec spec;
  spec.kind = (cfg.objective.kind == "shift") ? ObjectiveSpec::Kind::shift
                                              : ObjectiveSpec::Kind::bandwidth;
  spec.target_shift_thz = cfg.objective.target_shift_thz;
  spec.target_fwhm_thz = cfg.objective.target_fwhm_thz;
  spec.center_penalty_weight = cfg.objective.center_penalty_weight;
  spec.energy_bounds_nj = cfg.objective.energy_bounds_nj;
  spec.delay_bounds_ps = cfg.objective.delay_bounds_ps;
  return spec;
}

} // namespace xpmlab
