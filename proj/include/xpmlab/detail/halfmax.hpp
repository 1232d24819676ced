#ifndef XPMLAB_DETAIL_HALFMAX_HPP
#define XPMLAB_DETAIL_HALFMAX_HPP

#include <cstddef>
#include <span>

namespace xpmlab::detail {

/// Width between the outermost half-maximum crossings of ys over the axis xs
/// (linear interpolation between samples). Returns 0 for degenerate input
/// (fewer than 3 points or a flat/zero curve); callers turn that into their
/// own error.
double interpolated_fwhm(std::span<const double> xs, std::span<const double> ys);

} // namespace xpmlab::detail

#endif // XPMLAB_DETAIL_HALFMAX_HPP
