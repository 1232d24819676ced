#include "xpmlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xpmlab/errors.hpp"

namespace xpmlab {

void Spectrum::validate() const {
  if (frequencies_thz.size() != density.size())
    throw ValidationError("Spectrum: frequency/density length mismatch");
  for (std::size_t i = 1; i < frequencies_thz.size(); ++i)
    if (!(frequencies_thz[i] > frequencies_thz[i - 1]))
      throw ValidationError("Spectrum: frequency axis must be strictly increasing");
  for (double d : density)
    if (d < 0.0 || !std::isfinite(d))
      throw ValidationError("Spectrum: density must be finite and >= 0");
  if (unit_sum) {
    double sum = 0.0;
    for (double d : density) sum += d;
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError("Spectrum: unit-sum mode but sum(density) = " +
                            std::to_string(sum));
  }
}

namespace {

// Effective width of bin i from the spacing of its neighbors.
double bin_width(const std::vector<double>& f, std::size_t i) {
  const std::size_t n = f.size();
  if (n < 2) return 1.0;
  if (i == 0) return f[1] - f[0];
  if (i == n - 1) return f[n - 1] - f[n - 2];
  return 0.5 * (f[i + 1] - f[i - 1]);
}

} // namespace

namespace detail {

std::vector<double> bin_edges(const std::vector<double>& centers) {
  const std::size_t n = centers.size();
  std::vector<double> edges(n + 1);
  if (n == 1) {
    edges[0] = centers[0] - 0.5;
    edges[1] = centers[0] + 0.5;
    return edges;
  }
  edges[0] = centers[0] - 0.5 * (centers[1] - centers[0]);
  for (std::size_t i = 1; i < n; ++i) edges[i] = 0.5 * (centers[i - 1] + centers[i]);
  edges[n] = centers[n - 1] + 0.5 * (centers[n - 1] - centers[n - 2]);
  return edges;
}

void deposit_interval(std::vector<double>& bins, double start, double width,
                      double a, double b, double mass) {
  const double n = static_cast<double>(bins.size());
  if (!(b > a)) { // degenerate interval: nearest bin
    const double y = (0.5 * (a + b) - start) / width;
    if (y < 0.0 || y >= n) return;
    bins[static_cast<std::size_t>(y)] += mass;
    return;
  }
  const double y0 = (a - start) / width;
  const double y1 = (b - start) / width;
  const double lo = std::max(0.0, y0);
  const double hi = std::min(n, y1);
  if (hi <= lo) return; // entirely outside; caller already screened big masses
  const double per_unit = mass / (y1 - y0);
  std::size_t k = static_cast<std::size_t>(lo);
  while (k < bins.size()) {
    const double seg_lo = std::max(lo, static_cast<double>(k));
    const double seg_hi = std::min(hi, static_cast<double>(k + 1));
    if (seg_hi <= seg_lo) break;
    bins[k] += per_unit * (seg_hi - seg_lo);
    ++k;
    if (static_cast<double>(k) >= hi) break;
  }
}

} // namespace detail

Spectrum make_unit_sum(const Spectrum& s) {
  s.validate();
  if (s.unit_sum) return s;
  Spectrum out = s;
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.density[i] = s.density[i] * bin_width(s.frequencies_thz, i);
    total += out.density[i];
  }
  if (!(total > 0.0))
    throw ModelError("make_unit_sum: spectrum carries no power");
  for (auto& d : out.density) d /= total;
  out.unit_sum = true;
  return out;
}

Spectrum roll(const Spectrum& s, long bins) {
  Spectrum out = s;
  const long n = static_cast<long>(s.size());
  if (n == 0) return out;
  const long shift = ((bins % n) + n) % n;
  for (long i = 0; i < n; ++i)
    out.density[static_cast<std::size_t>((i + shift) % n)] = s.density[static_cast<std::size_t>(i)];
  return out;
}

Spectrum resample(const Spectrum& s, const std::vector<double>& new_frequencies_thz) {
  const Spectrum masses = make_unit_sum(s);
  const std::size_t m = new_frequencies_thz.size();
  if (m < 2) throw ValidationError("resample: target grid needs >= 2 bins");
  const double step = new_frequencies_thz[1] - new_frequencies_thz[0];
  for (std::size_t i = 1; i < m; ++i)
    if (std::abs((new_frequencies_thz[i] - new_frequencies_thz[i - 1]) - step) > 1e-9 * step)
      throw ValidationError("resample: target grid must be uniform");

  Spectrum out;
  out.frequencies_thz = new_frequencies_thz;
  out.density.assign(m, 0.0);
  const double start = new_frequencies_thz.front() - 0.5 * step;
  const auto edges = detail::bin_edges(masses.frequencies_thz);
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses.density[i] == 0.0) continue;
    detail::deposit_interval(out.density, start, step, edges[i], edges[i + 1],
                             masses.density[i]);
  }
  double total = 0.0;
  for (double d : out.density) total += d;
  if (!(total > 0.0))
    throw ModelError("resample: no mass falls inside the target grid");
  for (auto& d : out.density) d /= total;
  out.unit_sum = true;
  return out;
}

Spectrum median_filter3(const Spectrum& s) {
  Spectrum out = s;
  const std::size_t n = s.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double a = s.density[i - 1], b = s.density[i], c = s.density[i + 1];
    out.density[i] = std::max(std::min(a, b), std::min(std::max(a, b), c));
  }
  if (out.unit_sum) {
    double total = 0.0;
    for (double d : out.density) total += d;
    if (total > 0.0)
      for (auto& d : out.density) d /= total;
  }
  return out;
}

std::vector<double> uniform_grid(double lo_thz, double hi_thz, std::size_t n_bins) {
  if (!(hi_thz > lo_thz) || n_bins < 2)
    throw ValidationError("uniform_grid: need hi > lo and >= 2 bins");
  std::vector<double> f(n_bins);
  const double step = (hi_thz - lo_thz) / static_cast<double>(n_bins - 1);
  for (std::size_t i = 0; i < n_bins; ++i)
    f[i] = lo_thz + step * static_cast<double>(i);
  return f;
}

} // namespace xpmlab
