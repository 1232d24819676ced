#ifndef XPMLAB_TOF_HPP
#define XPMLAB_TOF_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "xpmlab/spectrum.hpp"

namespace xpmlab {

/// Dispersion-compensating-module spectrometer: wavelength maps to arrival
/// time as t = D * (lambda - reference_wavelength); the detector jitter is a
/// Gaussian blur of the arrival-time density. The window is centered on the
/// reference-wavelength arrival (t = 0).
struct SpectrometerConfig {
  double dispersion_ns_per_nm = 1.033;
  double reference_wavelength_nm = 1550.0;
  double jitter_fwhm_ps = 100.0;
  double bin_width_ps = 25.0;       // 4x finer than the default jitter
  double window_ps = 200000.0;      // total span

  void validate() const;
};

struct CountingConfig {
  double rep_rate_khz = 200.0;
  double integration_time_s = 30.0;
  double herald_prob = 0.01;
  double detection_eff = 0.1;       // absorbs insertion loss and detector eff.
  double noise_per_pulse = 1e-5;
  std::uint64_t rng_seed = 1;

  std::uint64_t total_pulses() const;
  void validate() const;
};

/// Unit-sum arrival-time probability per bin on a uniform ps grid.
struct TimePdf {
  double t_start_ps = 0.0;
  double bin_width_ps = 0.0;
  std::vector<double> prob;

  std::size_t size() const { return prob.size(); }
  double bin_center_ps(std::size_t i) const {
    return t_start_ps + (static_cast<double>(i) + 0.5) * bin_width_ps;
  }
};

struct CountHistogram {
  double t_start_ps = 0.0;
  double bin_width_ps = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total_pulses = 0;

  std::uint64_t total_counts() const;
  double bin_center_ps(std::size_t i) const {
    return t_start_ps + (static_cast<double>(i) + 0.5) * bin_width_ps;
  }
};

/// Map a unit-sum spectrum through the dispersive delay and blur it with the
/// jitter kernel. Throws ModelError naming the required window if any bin
/// carrying more than 1e-12 of the peak mass lands outside (jitter tails
/// included).
TimePdf arrival_time_pdf(const Spectrum& spectrum, const SpectrometerConfig& cfg);

/// Monte Carlo click record: per pulse one signal click with probability
/// herald_prob * detection_eff (arrival bin drawn from the pdf) plus
/// Poisson(noise_per_pulse) noise clicks uniform over the window. Bit-exact
/// reproducible for a fixed seed (mt19937_64 with fixed sampling algorithms;
/// parallel callers must derive seeds as base_seed + run_index).
CountHistogram simulate_counts(const TimePdf& pdf, const CountingConfig& counting);

/// Invert arrival time to wavelength to frequency per bin and renormalize.
/// Bin masses ride along, so the change-of-variables weight is implicit; the
/// resulting grid is monotone increasing and slightly nonuniform.
Spectrum reconstruct_spectrum(const CountHistogram& hist, const SpectrometerConfig& cfg);

/// Same inversion applied to an ideal pdf (the infinite-count limit); this is
/// the "jitter-broadened truth" that reconstructions converge to.
Spectrum pdf_to_spectrum(const TimePdf& pdf, const SpectrometerConfig& cfg);

/// Pointwise difference on matched grids, optional clamp at zero, then
/// renormalized. Throws ModelError("empty after subtraction") if nothing is
/// left.
Spectrum subtract_background(const Spectrum& sig, const Spectrum& bg, bool floor_at_zero);

/// Merge histograms from repeated acquisitions (matching binning required).
CountHistogram pool_histograms(const std::vector<CountHistogram>& hists);

} // namespace xpmlab

#endif // XPMLAB_TOF_HPP
