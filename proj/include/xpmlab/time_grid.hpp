#ifndef XPMLAB_TIME_GRID_HPP
#define XPMLAB_TIME_GRID_HPP

#include <cstddef>

#include "xpmlab/units.hpp"

namespace xpmlab {

/// Uniform time grid, symmetric about t0. Sample k sits at
/// t0 + (k - n/2) * dt; the matching frequency grid (after fftshift) is
/// (j - n/2) / (n dt), i.e. Nyquist +-1/(2 dt) around the carrier.
class TimeGrid {
public:
  TimeGrid(std::size_t n_samples, double dt_fs, double t0_fs = 0.0);

  std::size_t n_samples() const { return n_; }
  double dt_fs() const { return dt_; }
  double t0_fs() const { return t0_; }

  double span_fs() const { return static_cast<double>(n_) * dt_; }
  double time_at_fs(std::size_t k) const {
    return t0_ + (static_cast<double>(k) - static_cast<double>(n_ / 2)) * dt_;
  }

  /// Frequency bin width in 1/fs and THz.
  double dnu_inv_fs() const { return 1.0 / span_fs(); }
  double dnu_thz() const { return units::inv_fs_to_thz * dnu_inv_fs(); }

  /// Frequency offset from the carrier of fftshifted bin j, in 1/fs.
  double freq_offset_inv_fs(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(n_ / 2)) * dnu_inv_fs();
  }

  bool operator==(const TimeGrid& other) const {
    return n_ == other.n_ && dt_ == other.dt_ && t0_ == other.t0_;
  }

private:
  std::size_t n_;
  double dt_;
  double t0_;
};

} // namespace xpmlab

#endif // XPMLAB_TIME_GRID_HPP
