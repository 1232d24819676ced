#include <doctest.h>

#include <cmath>
#include <random>

#include "xpmlab/field.hpp"
#include "xpmlab/metrics.hpp"
#include "xpmlab/spectrum.hpp"
#include "xpmlab/units.hpp"
#include "xpmlab/xpm.hpp"

// Property sweeps over randomized-but-seeded inputs: the draws are fixed by
// the generator seed, so failures reproduce exactly.

using namespace xpmlab;

namespace {

const TimeGrid kGrid(4096, 4.0);
const double kCarrier = units::frequency_thz(1550.0);

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  }
  long integer(long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

FieldEnvelope random_field(Draw& draw) {
  const double bw = draw.uniform(1.0, 8.0);
  const double gdd = draw.uniform(-8000.0, 8000.0);
  const double center = draw.uniform(-800.0, 800.0);
  const double power = draw.uniform(0.1, 4.0);
  return make_gaussian_pulse(kGrid, kCarrier, bw, gdd, center, power);
}

Spectrum random_mixture(Draw& draw) {
  Spectrum s;
  s.frequencies_thz = uniform_grid(185.0, 202.0, 1024);
  s.density.assign(s.size(), 0.0);
  const int lobes = static_cast<int>(draw.integer(1, 3));
  for (int l = 0; l < lobes; ++l) {
    const double mu = draw.uniform(188.0, 199.0);
    const double fwhm = draw.uniform(0.5, 4.0);
    const double amp = draw.uniform(0.2, 1.0);
    const double c = 4.0 * std::log(2.0) / (fwhm * fwhm);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double d = s.frequencies_thz[i] - mu;
      s.density[i] += amp * std::exp(-c * d * d);
    }
  }
  return make_unit_sum(s);
}

double rel_power_change(const FieldEnvelope& a, const FieldEnvelope& b) {
  return std::abs(a.total_power() - b.total_power()) /
         std::max(1e-300, a.total_power());
}

} // namespace

TEST_CASE("property: phase-only modules conserve power for any parameters") {
  Draw draw(2024);
  for (int trial = 0; trial < 25; ++trial) {
    XpmModuleConfig m;
    m.pump.energy_nj = draw.uniform(0.0, 300.0);
    m.pump.delay_ps = draw.uniform(-2.0, 2.0);
    m.pump.fwhm_fs = draw.uniform(200.0, 3000.0);
    m.kappa_rad_per_w = draw.uniform(0.0, 3.0) * default_kappa();
    m.walkoff_fs = draw.uniform(0.0, 300.0);
    const FieldEnvelope in = random_field(draw);
    if (in.total_power() == 0.0) continue;
    CHECK(rel_power_change(in, apply_module(in, m)) <= 1e-12);
  }
}

TEST_CASE("property: mirrored pump delay negates the shift of a symmetric signal") {
  Draw draw(7);
  const FieldEnvelope in = make_gaussian_pulse(kGrid, kCarrier, 2.6, 0.0, 0.0, 1.0);
  for (int trial = 0; trial < 15; ++trial) {
    XpmModuleConfig m;
    m.pump.energy_nj = draw.uniform(5.0, 120.0);
    m.pump.delay_ps = draw.uniform(0.1, 1.8);
    m.kappa_rad_per_w = default_kappa();
    const double plus =
        center_frequency_thz(make_unit_sum(power_spectrum(apply_module(in, m)))) - kCarrier;
    m.pump.delay_ps = -m.pump.delay_ps;
    const double minus =
        center_frequency_thz(make_unit_sum(power_spectrum(apply_module(in, m)))) - kCarrier;
    CHECK(std::abs(plus + minus) <= kGrid.dnu_thz());
  }
}

TEST_CASE("property: round-trip transform and Parseval for arbitrary pulses") {
  Draw draw(11);
  for (int trial = 0; trial < 20; ++trial) {
    const FieldEnvelope field = random_field(draw);
    const auto round = FieldEnvelope::from_spectral_amplitude(
        kGrid, kCarrier, field.spectral_amplitude());
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < kGrid.n_samples(); ++k) {
      num += std::norm(round.samples()[k] - field.samples()[k]);
      den += std::norm(field.samples()[k]);
    }
    CHECK(std::sqrt(num / den) <= 1e-12);

    const Spectrum spec = power_spectrum(field);
    double integral = 0.0;
    for (double d : spec.density) integral += d;
    integral *= kGrid.dnu_thz();
    CHECK(integral == doctest::Approx(field.total_power()).epsilon(1e-12));
  }
}

TEST_CASE("property: spectral phase pairs with its inverse") {
  Draw draw(13);
  for (int trial = 0; trial < 15; ++trial) {
    const FieldEnvelope field = random_field(draw);
    const double gdd = draw.uniform(-6000.0, 6000.0);
    const auto back = apply_spectral_phase(apply_spectral_phase(field, gdd), -gdd);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < kGrid.n_samples(); ++k) {
      num += std::norm(back.samples()[k] - field.samples()[k]);
      den += std::norm(field.samples()[k]);
    }
    CHECK(std::sqrt(num / den) <= 1e-10);
  }
}

TEST_CASE("property: bin-exact translation for random integer shifts") {
  Draw draw(17);
  const FieldEnvelope field = make_gaussian_pulse(kGrid, kCarrier, 3.0, 0.0, 0.0, 1.0);
  const Spectrum before = power_spectrum(field);
  auto argmax = [](const Spectrum& s) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s.density[i] > s.density[best]) best = i;
    return static_cast<long>(best);
  };
  for (int trial = 0; trial < 15; ++trial) {
    const long m = draw.integer(-300, 300);
    std::vector<double> phase(kGrid.n_samples());
    for (std::size_t k = 0; k < phase.size(); ++k)
      phase[k] = units::two_pi * static_cast<double>(m) * kGrid.dnu_inv_fs() *
                 kGrid.time_at_fs(k);
    const Spectrum after = power_spectrum(apply_temporal_phase(field, phase));
    CHECK(std::abs((argmax(after) - argmax(before)) - m) <= 1);
  }
}

TEST_CASE("property: similarity is symmetric, bounded, maximal only at equality") {
  Draw draw(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Spectrum p = random_mixture(draw);
    const Spectrum q = random_mixture(draw);
    const double s = similarity(p, q);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(s == similarity(q, p));
    CHECK(similarity(p, p) == doctest::Approx(1.0).epsilon(1e-12));
    const long shift = draw.integer(-100, 100);
    CHECK(similarity(roll(p, shift), roll(q, shift)) == doctest::Approx(s).epsilon(1e-12));
    // Distinct mixtures essentially never coincide.
    double max_gap = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      max_gap = std::max(max_gap, std::abs(p.density[i] - q.density[i]));
    if (max_gap > 1e-6) CHECK(s < 1.0);
  }
}

TEST_CASE("property: resampling conserves normalization and the centroid") {
  Draw draw(23);
  for (int trial = 0; trial < 15; ++trial) {
    const Spectrum p = random_mixture(draw);
    const std::size_t bins = static_cast<std::size_t>(draw.integer(64, 512));
    const Spectrum r = resample(p, uniform_grid(184.0, 203.0, bins));
    double total = 0.0, centroid_in = 0.0, centroid_out = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      total += r.density[i];
      centroid_out += r.density[i] * r.frequencies_thz[i];
    }
    for (std::size_t i = 0; i < p.size(); ++i)
      centroid_in += p.density[i] * p.frequencies_thz[i];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    const double out_step = 19.0 / static_cast<double>(bins - 1);
    CHECK(std::abs(centroid_out - centroid_in) <= out_step);
  }
}

TEST_CASE("property: walk-off fades out smoothly toward the pointwise phase") {
  Draw draw(29);
  for (int trial = 0; trial < 10; ++trial) {
    XpmModuleConfig m;
    m.pump.energy_nj = draw.uniform(10.0, 150.0);
    m.pump.delay_ps = draw.uniform(-1.0, 1.0);
    m.kappa_rad_per_w = default_kappa();
    m.walkoff_fs = 0.49 * kGrid.dt_fs(); // below half a sample: same window
    const auto a = xpm_phase(m, kGrid);
    m.walkoff_fs = 0.0;
    const auto b = xpm_phase(m, kGrid);
    for (std::size_t k = 0; k < a.size(); k += 37)
      CHECK(std::abs(a[k] - b[k]) <= 1e-9);
  }
}
