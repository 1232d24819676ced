#include "xpmlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xpmlab/detail/halfmax.hpp"
#include "xpmlab/errors.hpp"
#include "xpmlab/fft.hpp"
#include "xpmlab/units.hpp"

namespace xpmlab {

namespace {

using units::two_pi;

// fftshift == ifftshift for even n: swap halves.
std::vector<std::complex<double>> rotate_half(const std::vector<std::complex<double>>& v) {
  const std::size_t n = v.size();
  std::vector<std::complex<double>> out(n);
  const std::size_t h = n / 2;
  std::copy(v.begin() + static_cast<std::ptrdiff_t>(h), v.end(), out.begin());
  std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h),
            out.begin() + static_cast<std::ptrdiff_t>(h));
  return out;
}

std::complex<double> polar_unit(double phase) {
  return {std::cos(phase), std::sin(phase)};
}

} // namespace

namespace detail {

double interpolated_fwhm(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = ys.size();
  if (n < 3 || xs.size() != n) return 0.0;
  const auto peak_it = std::max_element(ys.begin(), ys.end());
  const double peak = *peak_it;
  if (!(peak > 0.0)) return 0.0;
  const double half = 0.5 * peak;

  double lo = xs[0], hi = xs[n - 1];
  bool found_lo = false, found_hi = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (ys[i] >= half) {
      if (i == 0) {
        lo = xs[0];
      } else {
        const double f = (half - ys[i - 1]) / (ys[i] - ys[i - 1]);
        lo = xs[i - 1] + f * (xs[i] - xs[i - 1]);
      }
      found_lo = true;
      break;
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    if (ys[i] >= half) {
      if (i == n - 1) {
        hi = xs[n - 1];
      } else {
        const double f = (ys[i] - half) / (ys[i] - ys[i + 1]);
        hi = xs[i] + f * (xs[i + 1] - xs[i]);
      }
      found_hi = true;
      break;
    }
  }
  if (!found_lo || !found_hi || hi <= lo) return 0.0;
  return hi - lo;
}

} // namespace detail

FieldEnvelope::FieldEnvelope(TimeGrid grid, double carrier_thz,
                             std::vector<std::complex<double>> samples)
    : grid_(grid), carrier_(carrier_thz), samples_(std::move(samples)) {
  if (samples_.size() != grid_.n_samples())
    throw ValidationError("FieldEnvelope: sample count " + std::to_string(samples_.size()) +
                          " does not match grid n_samples " +
                          std::to_string(grid_.n_samples()));
}

double FieldEnvelope::total_power() const {
  double sum = 0.0;
  for (const auto& a : samples_) sum += std::norm(a);
  return sum * grid_.dt_fs();
}

std::vector<std::complex<double>> FieldEnvelope::spectral_amplitude() const {
  const std::size_t n = grid_.n_samples();
  auto buf = rotate_half(samples_);
  fft::forward_inplace(buf.data(), n);
  auto spectral = rotate_half(buf);
  const double dt = grid_.dt_fs();
  const double t0 = grid_.t0_fs();
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = -two_pi * grid_.freq_offset_inv_fs(j) * t0;
    spectral[j] *= dt * polar_unit(theta);
  }
  return spectral;
}

FieldEnvelope FieldEnvelope::from_spectral_amplitude(
    const TimeGrid& grid, double carrier_thz,
    const std::vector<std::complex<double>>& spectral) {
  const std::size_t n = grid.n_samples();
  if (spectral.size() != n)
    throw ValidationError("from_spectral_amplitude: length mismatch");
  std::vector<std::complex<double>> buf(n);
  const double dt = grid.dt_fs();
  const double t0 = grid.t0_fs();
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = two_pi * grid.freq_offset_inv_fs(j) * t0;
    buf[j] = spectral[j] * polar_unit(theta) / dt;
  }
  buf = rotate_half(buf);
  fft::inverse_inplace(buf.data(), n);
  return FieldEnvelope(grid, carrier_thz, rotate_half(buf));
}

FieldEnvelope make_gaussian_pulse(const TimeGrid& grid, double carrier_thz,
                                  double fwhm_bandwidth_thz, double gdd_fs2,
                                  double center_time_fs, double total_power) {
  if (!(fwhm_bandwidth_thz > 0.0))
    throw ValidationError("make_gaussian_pulse: fwhm_bandwidth must be > 0 THz");
  if (fwhm_bandwidth_thz < 4.0 * grid.dnu_thz())
    throw ValidationError("make_gaussian_pulse: unresolvable pulse, FWHM " +
                          std::to_string(fwhm_bandwidth_thz) + " THz spans fewer than 4 of the " +
                          std::to_string(grid.dnu_thz()) + " THz frequency bins");

  const double fwhm_inv_fs = fwhm_bandwidth_thz * units::thz_to_inv_fs;
  const double tl_duration_fs = units::gaussian_tbp / fwhm_inv_fs;
  const double stretch = 4.0 * std::log(2.0) * gdd_fs2 / (tl_duration_fs * tl_duration_fs);
  const double duration_fs = tl_duration_fs * std::sqrt(1.0 + stretch * stretch);
  if (duration_fs > 0.25 * grid.span_fs() ||
      std::abs(center_time_fs - grid.t0_fs()) > 0.25 * grid.span_fs())
    throw ValidationError("make_gaussian_pulse: aliasing risk, temporal extent " +
                          std::to_string(duration_fs) + " fs at center " +
                          std::to_string(center_time_fs) + " fs exceeds a quarter of the " +
                          std::to_string(grid.span_fs()) + " fs span");

  const std::size_t n = grid.n_samples();
  const double ln2 = std::log(2.0);
  std::vector<std::complex<double>> spectral(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double dnu = grid.freq_offset_inv_fs(j);
    const double rel = dnu / fwhm_inv_fs;
    const double amp = std::exp(-2.0 * ln2 * rel * rel);
    const double omega = two_pi * dnu;
    const double phase = 0.5 * gdd_fs2 * omega * omega - omega * center_time_fs;
    spectral[j] = amp * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  auto field = FieldEnvelope::from_spectral_amplitude(grid, carrier_thz, spectral);
  const double raw_power = field.total_power();
  if (total_power > 0.0 && raw_power > 0.0) {
    const double scale = std::sqrt(total_power / raw_power);
    for (auto& a : field.samples()) a *= scale;
  } else if (total_power == 0.0) {
    for (auto& a : field.samples()) a = 0.0;
  }
  return field;
}

FieldEnvelope apply_temporal_phase(const FieldEnvelope& field,
                                   std::span<const double> phase_rad) {
  if (phase_rad.size() != field.grid().n_samples())
    throw ValidationError("apply_temporal_phase: phase length " +
                          std::to_string(phase_rad.size()) + " != n_samples " +
                          std::to_string(field.grid().n_samples()));
  auto samples = field.samples();
  for (std::size_t k = 0; k < samples.size(); ++k)
    samples[k] *= polar_unit(phase_rad[k]);
  return FieldEnvelope(field.grid(), field.carrier_thz(), std::move(samples));
}

FieldEnvelope apply_spectral_phase(const FieldEnvelope& field, double gdd_fs2) {
  if (gdd_fs2 == 0.0) return field;
  auto spectral = field.spectral_amplitude();
  const auto& grid = field.grid();
  for (std::size_t j = 0; j < spectral.size(); ++j) {
    const double omega = two_pi * grid.freq_offset_inv_fs(j);
    spectral[j] *= polar_unit(0.5 * gdd_fs2 * omega * omega);
  }
  return FieldEnvelope::from_spectral_amplitude(grid, field.carrier_thz(), spectral);
}

Spectrum power_spectrum(const FieldEnvelope& field) {
  const auto spectral = field.spectral_amplitude();
  const auto& grid = field.grid();
  Spectrum out;
  out.frequencies_thz.resize(spectral.size());
  out.density.resize(spectral.size());
  for (std::size_t j = 0; j < spectral.size(); ++j) {
    out.frequencies_thz[j] =
        field.carrier_thz() + units::inv_fs_to_thz * grid.freq_offset_inv_fs(j);
    // |S|^2 is per (1/fs); report per THz so sum(density)*dnu_thz == power.
    out.density[j] = std::norm(spectral[j]) * units::thz_to_inv_fs;
  }
  out.unit_sum = false;
  return out;
}

double temporal_fwhm_fs(const FieldEnvelope& field) {
  const std::size_t n = field.grid().n_samples();
  std::vector<double> ts(n), intensity(n);
  for (std::size_t k = 0; k < n; ++k) {
    ts[k] = field.grid().time_at_fs(k);
    intensity[k] = std::norm(field.samples()[k]);
  }
  const double width = detail::interpolated_fwhm(ts, intensity);
  if (width <= 0.0)
    throw ModelError("temporal_fwhm: degenerate field");
  return width;
}

} // namespace xpmlab
