#include "xpmlab/units.hpp"

#include "xpmlab/errors.hpp"

namespace xpmlab::units {

double convert_gdd(double d_lambda_fs_per_nm, double wavelength_nm) {
  if (wavelength_nm <= 0.0)
    throw ValidationError("convert_gdd: wavelength must be > 0 nm");
  return d_lambda_fs_per_nm * wavelength_nm * wavelength_nm / (two_pi * c_nm_per_fs);
}

} // namespace xpmlab::units
