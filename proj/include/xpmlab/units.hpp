#ifndef XPMLAB_UNITS_HPP
#define XPMLAB_UNITS_HPP

#include <cmath>

// Unit conventions used throughout the library:
//   time fs, frequency THz, wavelength nm, energy nJ, power W, phase rad.
// 1 THz = 1e-3 / fs, so every phase of the form 2*pi*nu*t needs the
// thz_to_inv_fs factor; all such conversions live here or in the field ops.

namespace xpmlab::units {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Speed of light in nm/fs.
inline constexpr double c_nm_per_fs = 299.792458;

inline constexpr double thz_to_inv_fs = 1e-3;
inline constexpr double inv_fs_to_thz = 1e3;

/// nJ / fs expressed in W.
inline constexpr double nj_per_fs_to_w = 1e6;

/// FWHM = fwhm_to_sigma * sigma for a Gaussian.
inline const double fwhm_to_sigma = 1.0 / (2.0 * std::sqrt(2.0 * std::log(2.0)));

/// Duration-FWHM x bandwidth-FWHM of a transform-limited Gaussian (2 ln2 / pi).
inline const double gaussian_tbp = 2.0 * std::log(2.0) / pi;

inline double frequency_thz(double wavelength_nm) {
  return inv_fs_to_thz * c_nm_per_fs / wavelength_nm;
}

inline double wavelength_nm(double frequency_thz) {
  return inv_fs_to_thz * c_nm_per_fs / frequency_thz;
}

/// Group-delay slope (fs/nm) -> quadratic spectral phase coefficient (fs^2)
/// at the given carrier wavelength: d_lambda * lambda^2 / (2 pi c).
/// Positive input produces the chirp sign that the cascaded-XPM compression
/// protocol acts on (see field.hpp for the spectral phase definition).
double convert_gdd(double d_lambda_fs_per_nm, double wavelength_nm);

/// dB insertion loss -> amplitude transmission factor.
inline double db_to_amplitude(double loss_db) {
  return std::pow(10.0, -loss_db / 20.0);
}

} // namespace xpmlab::units

#endif // XPMLAB_UNITS_HPP
