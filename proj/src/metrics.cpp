#include "xpmlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "xpmlab/detail/halfmax.hpp"
#include "xpmlab/errors.hpp"
#include "xpmlab/units.hpp"

namespace xpmlab {

namespace {

// Tie-break anchor for argmax: c / 1550 nm.
const double kReferenceThz = units::frequency_thz(1550.0);

void require_same_grid(const Spectrum& p, const Spectrum& q, const char* who) {
  if (p.size() != q.size())
    throw ValidationError(std::string(who) + ": spectra sizes differ");
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = p.frequencies_thz[i], b = q.frequencies_thz[i];
    if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
      throw ValidationError(std::string(who) + ": frequency grids differ at bin " +
                            std::to_string(i));
  }
}

void require_unit_sum(const Spectrum& p, const char* who) {
  if (!p.unit_sum)
    throw ValidationError(std::string(who) + ": spectrum must be unit-sum normalized");
  double sum = 0.0;
  for (double d : p.density) sum += d;
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError(std::string(who) + ": unit-sum spectrum sums to " +
                          std::to_string(sum));
}

} // namespace

double similarity(const Spectrum& p, const Spectrum& q) {
  require_same_grid(p, q, "similarity");
  require_unit_sum(p, "similarity");
  require_unit_sum(q, "similarity");
  double bc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    bc += std::sqrt(p.density[i] * q.density[i]);
  return std::min(1.0, bc * bc);
}

double center_frequency_thz(const Spectrum& p) {
  p.validate();
  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p.density[i];
    if (d > best) {
      best = d;
      best_i = i;
    } else if (d == best &&
               std::abs(p.frequencies_thz[i] - kReferenceThz) <
                   std::abs(p.frequencies_thz[best_i] - kReferenceThz)) {
      best_i = i;
    }
  }
  if (!(best > 0.0))
    throw ModelError("center_frequency: all-zero spectrum");
  return p.frequencies_thz[best_i];
}

double centroid_frequency_thz(const Spectrum& p) {
  p.validate();
  double total = 0.0, moment = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += p.density[i];
    moment += p.density[i] * p.frequencies_thz[i];
  }
  if (!(total > 0.0))
    throw ModelError("centroid_frequency: all-zero spectrum");
  return moment / total;
}

double fwhm_thz(const Spectrum& p) {
  p.validate();
  const double width = detail::interpolated_fwhm(p.frequencies_thz, p.density);
  if (width <= 0.0)
    throw ModelError("fwhm: degenerate spectrum");
  return width;
}

double tbp(const FieldEnvelope& field) {
  const double dt_fwhm = temporal_fwhm_fs(field);
  const double dnu_fwhm = fwhm_thz(power_spectrum(field));
  return dt_fwhm * dnu_fwhm * units::thz_to_inv_fs;
}

SpectralSummary summarize(const Spectrum& p, const Spectrum& reference,
                          const std::optional<Spectrum>& similarity_target) {
  SpectralSummary out;
  out.center_frequency_thz = center_frequency_thz(p);
  out.fwhm_thz = fwhm_thz(p);
  out.shift_vs_reference_thz = out.center_frequency_thz - center_frequency_thz(reference);
  out.bandwidth_factor = out.fwhm_thz / fwhm_thz(reference);
  const Spectrum pu = p.unit_sum ? p : make_unit_sum(p);
  const Spectrum& target = similarity_target ? *similarity_target : reference;
  const Spectrum tu = target.unit_sum ? target : make_unit_sum(target);
  out.similarity_vs_target = similarity(pu, tu);
  return out;
}

std::string SpectralSummary::to_line() const {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%.9g\t%.9g\t%.9g\t%.9g\t%.9g",
                center_frequency_thz, fwhm_thz, shift_vs_reference_thz,
                bandwidth_factor, similarity_vs_target);
  return buf;
}

} // namespace xpmlab
