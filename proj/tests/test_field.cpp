#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "xpmlab/errors.hpp"
#include "xpmlab/field.hpp"
#include "xpmlab/metrics.hpp"
#include "xpmlab/units.hpp"

using namespace xpmlab;

namespace {

const TimeGrid kGrid(16384, 2.0);
const double kCarrier = units::frequency_thz(1550.0); // 193.414 THz

FieldEnvelope tl_pulse(double fwhm_thz = 2.6) {
  return make_gaussian_pulse(kGrid, kCarrier, fwhm_thz, 0.0, 0.0, 1.0);
}

std::size_t argmax_bin(const Spectrum& s) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s.density[i] > s.density[best]) best = i;
  return best;
}

} // namespace

TEST_CASE("time grid validation") {
  CHECK_THROWS_AS(TimeGrid(1000, 2.0), ValidationError); // not a power of two
  CHECK_THROWS_AS(TimeGrid(1024, 0.0), ValidationError);
  CHECK_THROWS_AS(TimeGrid(0, 2.0), ValidationError);
  const TimeGrid g(1024, 2.0, 10.0);
  CHECK(g.span_fs() == doctest::Approx(2048.0));
  CHECK(g.time_at_fs(512) == doctest::Approx(10.0)); // symmetric about t0
  CHECK(g.dnu_thz() == doctest::Approx(1000.0 / 2048.0));
}

TEST_CASE("gaussian pulse: transform-limited duration and bandwidth") {
  const auto field = tl_pulse();
  // Gaussian time-bandwidth product: 0.441271 / 2.6 THz = 169.72 fs.
  const double expected_fs = units::gaussian_tbp / (2.6 * units::thz_to_inv_fs);
  CHECK(expected_fs == doctest::Approx(169.7197).epsilon(1e-4));
  CHECK(temporal_fwhm_fs(field) == doctest::Approx(expected_fs).epsilon(5e-3));

  const Spectrum spec = power_spectrum(field);
  CHECK(fwhm_thz(spec) == doctest::Approx(2.6).epsilon(0.02)); // 2.6 +- 0.1 measured
  CHECK(std::abs(spec.frequencies_thz[argmax_bin(spec)] - kCarrier) <= kGrid.dnu_thz());
  CHECK(field.total_power() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gaussian pulse: chirped duration matches the closed form") {
  const double gdd = units::convert_gdd(4.0, 1550.0);
  const auto chirped = make_gaussian_pulse(kGrid, kCarrier, 2.6, gdd, 0.0, 1.0);
  const double t0 = units::gaussian_tbp / (2.6 * units::thz_to_inv_fs);
  const double stretch = 4.0 * std::log(2.0) * gdd / (t0 * t0);
  const double expected = t0 * std::sqrt(1.0 + stretch * stretch);
  CHECK(expected == doctest::Approx(189.11).epsilon(1e-3));
  CHECK(temporal_fwhm_fs(chirped) == doctest::Approx(expected).epsilon(5e-3));
  CHECK(temporal_fwhm_fs(chirped) > temporal_fwhm_fs(tl_pulse()));
  // Chirp is spectral phase only: the power spectrum must not move.
  CHECK(fwhm_thz(power_spectrum(chirped)) == doctest::Approx(2.6).epsilon(0.02));
}

TEST_CASE("gaussian pulse: center time and total power") {
  const auto field = make_gaussian_pulse(kGrid, kCarrier, 2.6, 0.0, 1200.0, 0.25);
  CHECK(field.total_power() == doctest::Approx(0.25).epsilon(1e-12));
  std::size_t peak = 0;
  double best = 0.0;
  for (std::size_t k = 0; k < field.samples().size(); ++k) {
    if (std::norm(field.samples()[k]) > best) {
      best = std::norm(field.samples()[k]);
      peak = k;
    }
  }
  CHECK(kGrid.time_at_fs(peak) == doctest::Approx(1200.0).epsilon(2e-3));
}

TEST_CASE("gaussian pulse: zero power is legal, metrics reject it downstream") {
  const auto field = make_gaussian_pulse(kGrid, kCarrier, 2.6, 0.0, 0.0, 0.0);
  CHECK(field.total_power() == 0.0);
  CHECK_THROWS_AS(temporal_fwhm_fs(field), ModelError);
}

TEST_CASE("gaussian pulse: precondition errors") {
  const TimeGrid coarse(1024, 2.0); // dnu = 0.488 THz
  CHECK_THROWS_WITH_AS(static_cast<void>(make_gaussian_pulse(coarse, kCarrier, 1.0, 0.0, 0.0, 1.0)),
                       doctest::Contains("unresolvable"), ValidationError);
  // Stretch far past a quarter of the 32.8 ps span.
  CHECK_THROWS_WITH_AS(static_cast<void>(make_gaussian_pulse(kGrid, kCarrier, 2.6, 3e6, 0.0, 1.0)),
                       doctest::Contains("aliasing"), ValidationError);
}

TEST_CASE("convert_gdd: zero, dimensional oracle, linearity") {
  CHECK(units::convert_gdd(0.0, 1550.0) == 0.0);
  // Hand computation with c in nm/fs: 4 * 1550^2 / (2 pi * 299.792458).
  const double expected = 4.0 * 1550.0 * 1550.0 / (2.0 * units::pi * 299.792458);
  CHECK(expected == doctest::Approx(5101.79).epsilon(1e-5));
  CHECK(units::convert_gdd(4.0, 1550.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(units::convert_gdd(8.0, 1550.0) ==
        doctest::Approx(2.0 * units::convert_gdd(4.0, 1550.0)).epsilon(1e-12));
  CHECK_THROWS_AS(units::convert_gdd(4.0, -1.0), ValidationError);
}

TEST_CASE("temporal phase: identity, shift theorem, quadratic broadening") {
  const auto field = tl_pulse();
  const std::size_t n = kGrid.n_samples();

  std::vector<double> zero(n, 0.0);
  const auto same = apply_temporal_phase(field, zero);
  for (std::size_t k = 0; k < n; k += 997)
    CHECK(same.samples()[k] == field.samples()[k]);

  // 2 pi * (1 THz) * t moves the argmax by +1 THz (within one bin).
  std::vector<double> linear(n);
  for (std::size_t k = 0; k < n; ++k)
    linear[k] = units::two_pi * 1.0 * units::thz_to_inv_fs * kGrid.time_at_fs(k);
  const auto shifted = apply_temporal_phase(field, linear);
  const Spectrum s0 = power_spectrum(field);
  const Spectrum s1 = power_spectrum(shifted);
  const double moved = s1.frequencies_thz[argmax_bin(s1)] - s0.frequencies_thz[argmax_bin(s0)];
  CHECK(std::abs(moved - 1.0) <= kGrid.dnu_thz());
  CHECK(std::abs(fwhm_thz(s1) - fwhm_thz(s0)) <= kGrid.dnu_thz());
  CHECK(shifted.total_power() ==
        doctest::Approx(field.total_power()).epsilon(1e-12));

  // Quadratic temporal phase broadens a transform-limited pulse.
  std::vector<double> quad(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kGrid.time_at_fs(k);
    quad[k] = 2e-5 * t * t;
  }
  const auto chirped = apply_temporal_phase(field, quad);
  CHECK(fwhm_thz(power_spectrum(chirped)) > fwhm_thz(s0) + kGrid.dnu_thz());

  std::vector<double> wrong(n - 1, 0.0);
  CHECK_THROWS_AS(static_cast<void>(apply_temporal_phase(field, wrong)), ValidationError);
}

TEST_CASE("fourier shift exactness for bin-multiple frequencies") {
  const auto field = tl_pulse();
  const std::size_t n = kGrid.n_samples();
  for (long m : {1L, 37L, 150L, -64L}) {
    const double dnu = kGrid.dnu_inv_fs();
    std::vector<double> phase(n);
    for (std::size_t k = 0; k < n; ++k)
      phase[k] = units::two_pi * static_cast<double>(m) * dnu * kGrid.time_at_fs(k);
    const auto shifted = apply_temporal_phase(field, phase);
    const Spectrum s0 = power_spectrum(field);
    const Spectrum s1 = power_spectrum(shifted);
    const long moved = static_cast<long>(argmax_bin(s1)) - static_cast<long>(argmax_bin(s0));
    CHECK(std::abs(moved - m) <= 1);
    CHECK(std::abs(fwhm_thz(s1) - fwhm_thz(s0)) <= kGrid.dnu_thz());
  }
}

TEST_CASE("spectral phase: identity, inverse pair, chirp broadening") {
  const auto field = tl_pulse();
  const auto same = apply_spectral_phase(field, 0.0);
  for (std::size_t k = 0; k < kGrid.n_samples(); k += 997)
    CHECK(same.samples()[k] == field.samples()[k]);

  const auto fwd = apply_spectral_phase(field, 4000.0);
  const auto back = apply_spectral_phase(fwd, -4000.0);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < kGrid.n_samples(); ++k) {
    num += std::norm(back.samples()[k] - field.samples()[k]);
    den += std::norm(field.samples()[k]);
  }
  CHECK(std::sqrt(num / den) < 1e-10);

  CHECK(fwd.total_power() == doctest::Approx(field.total_power()).epsilon(1e-12));
  CHECK(temporal_fwhm_fs(fwd) > temporal_fwhm_fs(field));
  CHECK(std::abs(fwhm_thz(power_spectrum(fwd)) - fwhm_thz(power_spectrum(field))) <=
        kGrid.dnu_thz());
}

TEST_CASE("power spectrum: parseval and round trip") {
  const auto field = make_gaussian_pulse(kGrid, kCarrier, 2.6,
                                         units::convert_gdd(4.0, 1550.0), 150.0, 1.0);
  const Spectrum spec = power_spectrum(field);
  double integral = 0.0;
  for (double d : spec.density) integral += d;
  integral *= kGrid.dnu_thz();
  CHECK(integral == doctest::Approx(field.total_power()).epsilon(1e-12));

  const auto round = FieldEnvelope::from_spectral_amplitude(kGrid, kCarrier,
                                                            field.spectral_amplitude());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < kGrid.n_samples(); ++k) {
    num += std::norm(round.samples()[k] - field.samples()[k]);
    den += std::norm(field.samples()[k]);
  }
  CHECK(std::sqrt(num / den) < 1e-12);
}

TEST_CASE("grid center offset t0 keeps transforms consistent") {
  const TimeGrid offset_grid(8192, 2.0, 500.0);
  const auto field = make_gaussian_pulse(offset_grid, kCarrier, 2.6, 0.0, 500.0, 1.0);
  CHECK(temporal_fwhm_fs(field) == doctest::Approx(169.72).epsilon(5e-3));
  const auto round = FieldEnvelope::from_spectral_amplitude(offset_grid, kCarrier,
                                                            field.spectral_amplitude());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < offset_grid.n_samples(); ++k) {
    num += std::norm(round.samples()[k] - field.samples()[k]);
    den += std::norm(field.samples()[k]);
  }
  CHECK(std::sqrt(num / den) < 1e-12);
}

TEST_CASE("gaussian TBP within two percent") {
  CHECK(tbp(tl_pulse()) == doctest::Approx(units::gaussian_tbp).epsilon(0.02));
}
