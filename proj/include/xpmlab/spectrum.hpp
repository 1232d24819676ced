#ifndef XPMLAB_SPECTRUM_HPP
#define XPMLAB_SPECTRUM_HPP

#include <cstddef>
#include <vector>

namespace xpmlab {

/// Discrete nonnegative power distribution over frequency bins.
/// In raw mode `density` is spectral density per THz (sum(density)*dnu equals
/// the field power by Parseval). In unit-sum mode `density` holds per-bin
/// probability masses with sum(density) == 1; that is the representation
/// entering the similarity measure. Bin centers must be strictly increasing;
/// nonuniform grids appear only in reconstructed spectra.
struct Spectrum {
  std::vector<double> frequencies_thz;
  std::vector<double> density;
  bool unit_sum = false;

  std::size_t size() const { return frequencies_thz.size(); }

  void validate() const; // throws ValidationError on broken invariants
};

/// Convert to per-bin masses summing to one. Bin widths are taken from the
/// spacing of the frequency axis (uniform or not). Throws on all-zero input.
Spectrum make_unit_sum(const Spectrum& s);

/// Circular shift of the density by an integer number of bins (positive =
/// toward higher frequency). Grid is unchanged.
Spectrum roll(const Spectrum& s, long bins);

/// Mass-conserving resample onto a new uniform grid: each input bin's mass is
/// spread uniformly over its own extent (edges at the midpoints) and split
/// across the output bins it overlaps; mass outside the target is dropped.
/// Result is unit-sum.
Spectrum resample(const Spectrum& s, const std::vector<double>& new_frequencies_thz);

namespace detail {
/// n+1 edges from n strictly increasing bin centers (midpoints, mirrored ends).
std::vector<double> bin_edges(const std::vector<double>& centers);
/// Spread `mass` uniformly over [a, b] onto uniform bins of the given width
/// starting at `start`; the part outside the bin range is dropped.
void deposit_interval(std::vector<double>& bins, double start, double width,
                      double a, double b, double mass);
} // namespace detail

/// 3-bin median filter on the density (ends copied through). Used to tame
/// Monte Carlo histogram spikes before peak finding; off by default everywhere.
Spectrum median_filter3(const Spectrum& s);

/// Uniform grid helper: n bins centered on [lo, hi].
std::vector<double> uniform_grid(double lo_thz, double hi_thz, std::size_t n_bins);

} // namespace xpmlab

#endif // XPMLAB_SPECTRUM_HPP
