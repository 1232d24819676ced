#include "xpmlab/tof.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "xpmlab/errors.hpp"
#include "xpmlab/units.hpp"

namespace xpmlab {

namespace {

// Mass below this fraction of the peak bin is allowed to fall outside the
// window (the simulation grid always carries numerically-zero far tails).
constexpr double kWindowMassThreshold = 1e-12;

double sigma_ps(const SpectrometerConfig& cfg) {
  return cfg.jitter_fwhm_ps * units::fwhm_to_sigma;
}

double arrival_time_ps(double frequency_thz, const SpectrometerConfig& cfg) {
  const double lambda_nm = units::wavelength_nm(frequency_thz);
  return cfg.dispersion_ns_per_nm * (lambda_nm - cfg.reference_wavelength_nm) * 1000.0;
}

double frequency_from_arrival_thz(double t_ps, const SpectrometerConfig& cfg) {
  const double lambda_nm =
      cfg.reference_wavelength_nm + (t_ps / 1000.0) / cfg.dispersion_ns_per_nm;
  if (!(lambda_nm > 0.0)) return -1.0;
  return units::frequency_thz(lambda_nm);
}

// Uniform double in [0,1) from the top 53 bits; fixed here (not a std::
// distribution) so histograms are bit-identical across platforms.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Knuth's product method; exact and cheap for the per-pulse rates used here.
std::uint64_t next_poisson(std::mt19937_64& rng, double mean) {
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double p = next_uniform(rng);
  while (p > limit) {
    ++k;
    p *= next_uniform(rng);
  }
  return k;
}

// Shared t -> lambda -> nu inversion for histograms and ideal pdfs.
Spectrum invert_arrival_bins(double t_start_ps, double bin_width_ps,
                             const std::vector<double>& masses,
                             const SpectrometerConfig& cfg) {
  const std::size_t n = masses.size();
  Spectrum out;
  out.frequencies_thz.reserve(n);
  out.density.reserve(n);
  double total = 0.0;
  // Arrival time increases with wavelength, so walk backwards for an
  // increasing frequency axis.
  for (std::size_t i = n; i-- > 0;) {
    const double t = t_start_ps + (static_cast<double>(i) + 0.5) * bin_width_ps;
    const double f = frequency_from_arrival_thz(t, cfg);
    if (f <= 0.0) {
      if (masses[i] > 0.0)
        throw ModelError("reconstruct_spectrum: counts at arrival " + std::to_string(t) +
                         " ps map to an unphysical wavelength");
      continue;
    }
    out.frequencies_thz.push_back(f);
    out.density.push_back(masses[i]);
    total += masses[i];
  }
  if (!(total > 0.0))
    throw ModelError("reconstruct_spectrum: empty histogram");
  for (auto& d : out.density) d /= total;
  out.unit_sum = true;
  out.validate();
  return out;
}

} // namespace

void SpectrometerConfig::validate() const {
  if (!(dispersion_ns_per_nm > 0.0))
    throw ValidationError("SpectrometerConfig: dispersion must be > 0 ns/nm");
  if (!(reference_wavelength_nm > 0.0))
    throw ValidationError("SpectrometerConfig: reference_wavelength must be > 0 nm");
  if (jitter_fwhm_ps < 0.0)
    throw ValidationError("SpectrometerConfig: jitter_fwhm must be >= 0 ps");
  if (!(bin_width_ps > 0.0))
    throw ValidationError("SpectrometerConfig: bin_width must be > 0 ps");
  if (!(window_ps >= bin_width_ps))
    throw ValidationError("SpectrometerConfig: window must cover at least one bin");
}

std::uint64_t CountingConfig::total_pulses() const {
  return static_cast<std::uint64_t>(std::llround(rep_rate_khz * 1000.0 * integration_time_s));
}

void CountingConfig::validate() const {
  if (!(rep_rate_khz > 0.0) || !(integration_time_s > 0.0))
    throw ValidationError("CountingConfig: rep_rate and integration_time must be > 0");
  if (herald_prob < 0.0 || herald_prob > 1.0)
    throw ValidationError("CountingConfig: herald_prob must be in [0,1]");
  if (detection_eff < 0.0 || detection_eff > 1.0)
    throw ValidationError("CountingConfig: detection_eff must be in [0,1]");
  if (noise_per_pulse < 0.0)
    throw ValidationError("CountingConfig: noise_per_pulse must be >= 0");
}

std::uint64_t CountHistogram::total_counts() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

TimePdf arrival_time_pdf(const Spectrum& spectrum, const SpectrometerConfig& cfg) {
  cfg.validate();
  spectrum.validate();
  if (!spectrum.unit_sum)
    throw ValidationError("arrival_time_pdf: spectrum must be unit-sum normalized");

  const std::size_t half_bins =
      static_cast<std::size_t>(std::ceil(0.5 * cfg.window_ps / cfg.bin_width_ps));
  const std::size_t n_bins = 2 * half_bins;
  TimePdf pdf;
  pdf.bin_width_ps = cfg.bin_width_ps;
  pdf.t_start_ps = -static_cast<double>(half_bins) * cfg.bin_width_ps;
  pdf.prob.assign(n_bins, 0.0);

  const double peak_mass = *std::max_element(spectrum.density.begin(), spectrum.density.end());
  const double threshold = kWindowMassThreshold * peak_mass;
  const double guard_ps = 4.0 * sigma_ps(cfg);

  double required = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double mass = spectrum.density[i];
    const double f = spectrum.frequencies_thz[i];
    if (mass <= threshold) continue;
    if (f <= 0.0)
      throw ModelError("arrival_time_pdf: spectrum carries mass at non-positive frequency");
    const double t = arrival_time_ps(f, cfg);
    required = std::max(required, std::abs(t) + guard_ps);
  }
  if (2.0 * required > static_cast<double>(n_bins) * cfg.bin_width_ps)
    throw ModelError("arrival_time_pdf: spectrum extends past the window; need window_ps >= " +
                     std::to_string(2.0 * required) + " (configured " +
                     std::to_string(cfg.window_ps) + ")");

  // Each source bin disperses onto a whole arrival-time interval (its edges
  // mapped through the delay line); spread the mass uniformly across it.
  const auto edges = detail::bin_edges(spectrum.frequencies_thz);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double mass = spectrum.density[i];
    if (mass <= 0.0) continue;
    const double f_lo = edges[i], f_hi = edges[i + 1];
    if (f_lo <= 0.0) continue; // screened above for significant mass
    const double t_a = arrival_time_ps(f_hi, cfg); // higher frequency arrives first
    const double t_b = arrival_time_ps(f_lo, cfg);
    detail::deposit_interval(pdf.prob, pdf.t_start_ps, cfg.bin_width_ps, t_a, t_b, mass);
  }

  if (cfg.jitter_fwhm_ps > 0.0) {
    const double sigma = sigma_ps(cfg);
    const long half = std::max<long>(1, std::lround(std::ceil(4.0 * sigma / cfg.bin_width_ps)));
    std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
    double ksum = 0.0;
    for (long j = -half; j <= half; ++j) {
      const double u = static_cast<double>(j) * cfg.bin_width_ps / sigma;
      kernel[static_cast<std::size_t>(j + half)] = std::exp(-0.5 * u * u);
      ksum += kernel[static_cast<std::size_t>(j + half)];
    }
    for (auto& kv : kernel) kv /= ksum;

    std::vector<double> blurred(n_bins, 0.0);
    for (std::size_t i = 0; i < n_bins; ++i) {
      const double mass = pdf.prob[i];
      if (mass == 0.0) continue;
      for (long j = -half; j <= half; ++j) {
        const long k = static_cast<long>(i) + j;
        if (k < 0 || k >= static_cast<long>(n_bins)) continue;
        blurred[static_cast<std::size_t>(k)] += mass * kernel[static_cast<std::size_t>(j + half)];
      }
    }
    pdf.prob = std::move(blurred);
  }

  double total = 0.0;
  for (double p : pdf.prob) total += p;
  if (!(total > 0.0))
    throw ModelError("arrival_time_pdf: no probability mass inside the window");
  for (auto& p : pdf.prob) p /= total;
  return pdf;
}

CountHistogram simulate_counts(const TimePdf& pdf, const CountingConfig& counting) {
  counting.validate();
  if (pdf.prob.empty())
    throw ValidationError("simulate_counts: empty pdf");

  std::vector<double> cdf(pdf.prob.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pdf.prob.size(); ++i) {
    acc += pdf.prob[i];
    cdf[i] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-9)
    throw ValidationError("simulate_counts: pdf must be unit-sum");
  cdf.back() = 1.0;

  CountHistogram hist;
  hist.t_start_ps = pdf.t_start_ps;
  hist.bin_width_ps = pdf.bin_width_ps;
  hist.counts.assign(pdf.prob.size(), 0);
  hist.total_pulses = counting.total_pulses();

  const double p_click = counting.herald_prob * counting.detection_eff;
  const double noise_mean = counting.noise_per_pulse;
  const std::size_t n_bins = pdf.prob.size();
  std::mt19937_64 rng(counting.rng_seed);

  for (std::uint64_t pulse = 0; pulse < hist.total_pulses; ++pulse) {
    if (p_click > 0.0 && next_uniform(rng) < p_click) {
      const double u = next_uniform(rng);
      const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
      const std::size_t bin = std::min(n_bins - 1,
                                       static_cast<std::size_t>(it - cdf.begin()));
      ++hist.counts[bin];
    }
    if (noise_mean > 0.0) {
      const std::uint64_t clicks = next_poisson(rng, noise_mean);
      for (std::uint64_t c = 0; c < clicks; ++c) {
        const std::size_t bin = std::min(n_bins - 1,
            static_cast<std::size_t>(next_uniform(rng) * static_cast<double>(n_bins)));
        ++hist.counts[bin];
      }
    }
  }
  return hist;
}

Spectrum reconstruct_spectrum(const CountHistogram& hist, const SpectrometerConfig& cfg) {
  cfg.validate();
  if (hist.counts.empty() || hist.total_counts() == 0)
    throw ModelError("reconstruct_spectrum: empty histogram");
  std::vector<double> masses(hist.counts.size());
  for (std::size_t i = 0; i < masses.size(); ++i)
    masses[i] = static_cast<double>(hist.counts[i]);
  return invert_arrival_bins(hist.t_start_ps, hist.bin_width_ps, masses, cfg);
}

Spectrum pdf_to_spectrum(const TimePdf& pdf, const SpectrometerConfig& cfg) {
  cfg.validate();
  return invert_arrival_bins(pdf.t_start_ps, pdf.bin_width_ps, pdf.prob, cfg);
}

Spectrum subtract_background(const Spectrum& sig, const Spectrum& bg, bool floor_at_zero) {
  sig.validate();
  bg.validate();
  if (sig.size() != bg.size())
    throw ValidationError("subtract_background: spectra sizes differ");
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (std::abs(sig.frequencies_thz[i] - bg.frequencies_thz[i]) >
        1e-9 * std::max(1.0, std::abs(sig.frequencies_thz[i])))
      throw ValidationError("subtract_background: frequency grids differ at bin " +
                            std::to_string(i));

  Spectrum out = sig;
  bool any_positive = false;
  bool any_negative = false;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    double d = sig.density[i] - bg.density[i];
    if (d < 0.0) {
      any_negative = true;
      if (floor_at_zero) d = 0.0;
    }
    if (d > 0.0) any_positive = true;
    out.density[i] = d;
  }
  if (!any_positive)
    throw ModelError("subtract_background: empty after subtraction");
  if (any_negative && !floor_at_zero)
    throw ModelError("subtract_background: negative bins remain; enable floor_at_zero");

  double total = 0.0;
  for (double d : out.density) total += d;
  for (auto& d : out.density) d /= total;
  out.unit_sum = true;
  return out;
}

CountHistogram pool_histograms(const std::vector<CountHistogram>& hists) {
  if (hists.empty())
    throw ValidationError("pool_histograms: nothing to pool");
  CountHistogram pooled = hists.front();
  for (std::size_t h = 1; h < hists.size(); ++h) {
    const auto& next = hists[h];
    if (next.counts.size() != pooled.counts.size() ||
        next.bin_width_ps != pooled.bin_width_ps || next.t_start_ps != pooled.t_start_ps)
      throw ValidationError("pool_histograms: binning mismatch");
    for (std::size_t i = 0; i < pooled.counts.size(); ++i)
      pooled.counts[i] += next.counts[i];
    pooled.total_pulses += next.total_pulses;
  }
  return pooled;
}

} // namespace xpmlab
