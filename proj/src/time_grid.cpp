#include "xpmlab/time_grid.hpp"

#include <string>

#include "xpmlab/errors.hpp"

namespace xpmlab {

namespace {
bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }
} // namespace

TimeGrid::TimeGrid(std::size_t n_samples, double dt_fs, double t0_fs)
    : n_(n_samples), dt_(dt_fs), t0_(t0_fs) {
  if (!is_power_of_two(n_))
    throw ValidationError("TimeGrid: n_samples must be a power of two >= 2, got " +
                          std::to_string(n_));
  if (!(dt_ > 0.0))
    throw ValidationError("TimeGrid: dt must be > 0 fs");
}

} // namespace xpmlab
