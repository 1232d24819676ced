#ifndef XPMLAB_FIELD_HPP
#define XPMLAB_FIELD_HPP

#include <complex>
#include <span>
#include <vector>

#include "xpmlab/spectrum.hpp"
#include "xpmlab/time_grid.hpp"

namespace xpmlab {

// Sign conventions, fixed here once and referenced by every other module:
//   * samples are the envelope A(t) relative to the carrier, in time order;
//   * the forward transform uses the e^{-i 2 pi nu t} kernel, so a temporal
//     phase +2 pi dnu t moves the spectrum to HIGHER frequency (blue);
//   * apply_spectral_phase multiplies the spectral amplitude by
//     exp(i * gdd/2 * (2 pi dnu)^2).
// Amplitudes are in sqrt(photon)/sqrt(fs): sum |A|^2 dt = mean photon number.

class FieldEnvelope {
public:
  FieldEnvelope(TimeGrid grid, double carrier_thz,
                std::vector<std::complex<double>> samples);

  const TimeGrid& grid() const { return grid_; }
  double carrier_thz() const { return carrier_; }
  const std::vector<std::complex<double>>& samples() const { return samples_; }
  std::vector<std::complex<double>>& samples() { return samples_; }

  /// sum |A|^2 dt, the mean photon number.
  double total_power() const;

  /// Spectral amplitude on the fftshifted frequency grid (bin j at carrier
  /// offset (j - n/2)/(n dt)), normalized so that sum |S|^2 dnu == total_power.
  std::vector<std::complex<double>> spectral_amplitude() const;

  static FieldEnvelope from_spectral_amplitude(
      const TimeGrid& grid, double carrier_thz,
      const std::vector<std::complex<double>>& spectral);

private:
  TimeGrid grid_;
  double carrier_;
  std::vector<std::complex<double>> samples_;
};

/// Gaussian power spectrum of the given FWHM with quadratic spectral phase,
/// centered at center_time, holding total_power photons.
/// Throws ValidationError if the bandwidth is unresolvable (< 4 frequency
/// bins across the FWHM) or the chirped pulse exceeds a quarter of the span.
FieldEnvelope make_gaussian_pulse(const TimeGrid& grid, double carrier_thz,
                                  double fwhm_bandwidth_thz, double gdd_fs2,
                                  double center_time_fs, double total_power);

/// Pointwise multiplication by exp(i phase). Power-conserving.
FieldEnvelope apply_temporal_phase(const FieldEnvelope& field,
                                   std::span<const double> phase_rad);

/// Multiply the spectral amplitude by exp(i * gdd/2 * (2 pi dnu)^2).
FieldEnvelope apply_spectral_phase(const FieldEnvelope& field, double gdd_fs2);

/// |spectral amplitude|^2 on the absolute frequency axis (raw density per
/// THz; integrates to total_power by Parseval).
Spectrum power_spectrum(const FieldEnvelope& field);

/// Temporal intensity FWHM in fs (linear-interpolated half-max crossings).
double temporal_fwhm_fs(const FieldEnvelope& field);

} // namespace xpmlab

#endif // XPMLAB_FIELD_HPP
