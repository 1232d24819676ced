#include "xpmlab/xpm.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "xpmlab/errors.hpp"
#include "xpmlab/fft.hpp"
#include "xpmlab/units.hpp"

namespace xpmlab {

namespace {

using units::two_pi;

constexpr int kSpmSteps = 64;

// Symmetric split-step pass for the pump itself: SPM with the module kappa
// plus the user-supplied pump GVD, both spread over kSpmSteps. The XPM phase
// then samples the output profile. SPM alone (zero GVD) leaves |B|^2 intact.
std::vector<double> evolve_pump_profile(std::vector<double> power_w,
                                        const TimeGrid& grid, double kappa_rad_per_w,
                                        double gvd_fs2) {
  const std::size_t n = power_w.size();
  std::vector<std::complex<double>> b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = std::sqrt(power_w[k]);

  const double gvd_half_step = 0.5 * gvd_fs2 / kSpmSteps;
  const double kappa_step = kappa_rad_per_w / kSpmSteps;

  std::vector<std::complex<double>> disp_half(n);
  for (std::size_t j = 0; j < n; ++j) {
    // fftshifted bin j sits at DFT index (j + n/2) % n; build unshifted.
    const std::size_t dft = (j + n / 2) % n;
    const double omega = two_pi * grid.freq_offset_inv_fs(j);
    const double phase = 0.5 * gvd_half_step * omega * omega;
    disp_half[dft] = {std::cos(phase), std::sin(phase)};
  }

  auto dispersion_half = [&]() {
    fft::forward_inplace(b.data(), n);
    for (std::size_t k = 0; k < n; ++k) b[k] *= disp_half[k];
    fft::inverse_inplace(b.data(), n);
  };

  for (int step = 0; step < kSpmSteps; ++step) {
    dispersion_half();
    for (std::size_t k = 0; k < n; ++k) {
      const double phase = kappa_step * std::norm(b[k]);
      b[k] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    dispersion_half();
  }

  for (std::size_t k = 0; k < n; ++k) power_w[k] = std::norm(b[k]);
  return power_w;
}

} // namespace

double PumpPulse::peak_power_w() const {
  const double shape = 2.0 * std::sqrt(std::log(2.0) / units::pi);
  return energy_nj * shape / fwhm_fs * units::nj_per_fs_to_w;
}

void PumpPulse::validate() const {
  if (energy_nj < 0.0)
    throw ValidationError("PumpPulse: energy must be >= 0 nJ");
  if (!(fwhm_fs > 0.0))
    throw ValidationError("PumpPulse: fwhm_duration must be > 0 fs");
  if (!(center_wavelength_nm > 0.0))
    throw ValidationError("PumpPulse: center_wavelength must be > 0 nm");
  if (!std::isfinite(peak_power_w()))
    throw ValidationError("PumpPulse: peak power is not finite");
}

void XpmModuleConfig::validate() const {
  pump.validate();
  if (kappa_rad_per_w < 0.0)
    throw ValidationError("XpmModuleConfig: kappa must be >= 0 rad/W");
  if (insertion_loss_db < 0.0)
    throw ValidationError("XpmModuleConfig: insertion_loss must be >= 0 dB");
  if (walkoff_fs < 0.0)
    throw ValidationError("XpmModuleConfig: walkoff must be >= 0 fs");
}

void CascadeConfig::validate() const {
  if (modules.empty() || modules.size() > 2)
    throw ValidationError("CascadeConfig: cascade length must be in {1, 2}, got " +
                          std::to_string(modules.size()));
  for (const auto& m : modules) m.validate();
}

std::vector<double> pump_power_profile(const PumpPulse& pump, const TimeGrid& grid) {
  pump.validate();
  if (pump.fwhm_fs < 8.0 * grid.dt_fs())
    throw ValidationError("pump_power_profile: unresolvable pump, FWHM " +
                          std::to_string(pump.fwhm_fs) + " fs spans fewer than 8 samples of dt " +
                          std::to_string(grid.dt_fs()) + " fs");
  const double p0 = pump.peak_power_w();
  const double delay_fs = pump.delay_ps * 1000.0;
  const double coeff = 4.0 * std::log(2.0) / (pump.fwhm_fs * pump.fwhm_fs);
  std::vector<double> power(grid.n_samples());
  for (std::size_t k = 0; k < power.size(); ++k) {
    const double t = grid.time_at_fs(k) - delay_fs;
    power[k] = p0 * std::exp(-coeff * t * t);
  }
  return power;
}

std::vector<double> xpm_phase(const XpmModuleConfig& config, const TimeGrid& grid) {
  config.validate();
  std::vector<double> power = pump_power_profile(config.pump, grid);
  if (config.pump_spm)
    power = evolve_pump_profile(std::move(power), grid, config.kappa_rad_per_w,
                                config.pump_gvd_fs2);

  const std::size_t n = power.size();
  std::vector<double> phase(n);
  const long window = std::max<long>(1, std::lround(config.walkoff_fs / grid.dt_fs()));
  if (window == 1) {
    for (std::size_t k = 0; k < n; ++k)
      phase[k] = config.kappa_rad_per_w * power[k];
  } else {
    // Trailing average over the walk-off span; samples before the grid are 0.
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += power[k];
      if (static_cast<long>(k) >= window) acc -= power[k - static_cast<std::size_t>(window)];
      phase[k] = config.kappa_rad_per_w * acc / static_cast<double>(window);
    }
  }
  return phase;
}

FieldEnvelope apply_module(const FieldEnvelope& field, const XpmModuleConfig& config) {
  const auto phase = xpm_phase(config, field.grid());
  auto out = apply_temporal_phase(field, phase);
  const double amp = units::db_to_amplitude(config.insertion_loss_db);
  if (amp != 1.0)
    for (auto& a : out.samples()) a *= amp;
  return out;
}

FieldEnvelope apply_cascade(const FieldEnvelope& field, const CascadeConfig& cascade) {
  cascade.validate();
  FieldEnvelope out = apply_module(field, cascade.modules.front());
  for (std::size_t i = 1; i < cascade.modules.size(); ++i) {
    if (cascade.inter_module_gdd_fs2 != 0.0)
      out = apply_spectral_phase(out, cascade.inter_module_gdd_fs2);
    out = apply_module(out, cascade.modules[i]);
  }
  return out;
}

double analytic_peak_shift_thz(const XpmModuleConfig& config) {
  const double p0 = config.pump.peak_power_w();
  const double slope = 2.0 * std::sqrt(2.0 * std::log(2.0)) / config.pump.fwhm_fs;
  const double shift_inv_fs =
      config.kappa_rad_per_w * p0 * slope * std::exp(-0.5) / two_pi;
  return units::inv_fs_to_thz * shift_inv_fs;
}

double calibrate_kappa(double target_peak_shift_thz, double at_energy_nj,
                       const PumpPulse& pump) {
  if (!(target_peak_shift_thz > 0.0))
    throw ValidationError("calibrate_kappa: target peak shift must be > 0 THz");
  PumpPulse probe = pump;
  probe.energy_nj = at_energy_nj;
  probe.validate();
  XpmModuleConfig unit;
  unit.pump = probe;
  unit.kappa_rad_per_w = 1.0;
  const double shift_per_kappa = analytic_peak_shift_thz(unit);
  return target_peak_shift_thz / shift_per_kappa;
}

double default_kappa() {
  return calibrate_kappa(3.3, 100.0, PumpPulse{});
}

} // namespace xpmlab
