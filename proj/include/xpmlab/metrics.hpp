#ifndef XPMLAB_METRICS_HPP
#define XPMLAB_METRICS_HPP

#include <optional>
#include <string>

#include "xpmlab/field.hpp"
#include "xpmlab/spectrum.hpp"

namespace xpmlab {

/// Scalar figures of merit for one spectrum, all against an optional reference.
struct SpectralSummary {
  double center_frequency_thz = 0.0;
  double fwhm_thz = 0.0;
  double shift_vs_reference_thz = 0.0;
  double bandwidth_factor = 1.0;
  double similarity_vs_target = 1.0;
  bool median_filtered = false;

  std::string to_line() const; // tab-delimited: center fwhm shift factor S
};

/// Squared Bhattacharyya coefficient (sum_i sqrt(p_i q_i))^2 between two
/// unit-sum spectra on identical grids. Symmetric, in [0,1], 1 iff p == q.
double similarity(const Spectrum& p, const Spectrum& q);

/// Frequency of the maximum bin; ties broken toward the bin nearest
/// 193.414... THz (c / 1550 nm). Argmax, not centroid, mirrors how the
/// shifted centers were read off the measured spectra.
double center_frequency_thz(const Spectrum& p);

/// First-moment variant; provided for diagnostics, never used in acceptance.
double centroid_frequency_thz(const Spectrum& p);

/// Width between the outermost linear-interpolated half-maximum crossings,
/// so multi-lobed spectra get a single conservative width.
double fwhm_thz(const Spectrum& p);

/// Temporal-intensity FWHM (fs) x spectral FWHM (THz), dimensionless.
double tbp(const FieldEnvelope& field);

/// Summary of `p` against a reference spectrum (shift, bandwidth factor) and
/// an optional similarity target (defaults to the reference).
SpectralSummary summarize(const Spectrum& p, const Spectrum& reference,
                          const std::optional<Spectrum>& similarity_target = std::nullopt);

} // namespace xpmlab

#endif // XPMLAB_METRICS_HPP
