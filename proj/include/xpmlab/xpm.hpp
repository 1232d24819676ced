#ifndef XPMLAB_XPM_HPP
#define XPMLAB_XPM_HPP

#include <vector>

#include "xpmlab/field.hpp"

namespace xpmlab {

/// One pump pulse, frozen in the signal frame (quasi-static, no walk-off by
/// default: pump and signal straddle the fiber zero-dispersion wavelength).
struct PumpPulse {
  double energy_nj = 0.0;
  double fwhm_fs = 1766.0;          // effective in-fiber duration, see README
  double center_wavelength_nm = 1030.0;
  double delay_ps = 0.0;            // pump center in the signal frame

  /// energy * 2 sqrt(ln2/pi) / fwhm, in W.
  double peak_power_w() const;

  void validate() const;
};

/// One XPM fiber module: kappa stands for the product 2*gamma*L, the only
/// combination the phase depends on.
struct XpmModuleConfig {
  PumpPulse pump;
  double kappa_rad_per_w = 0.0;
  double insertion_loss_db = 0.0;
  double walkoff_fs = 0.0;          // 0 disables the sliding-average window
  bool pump_spm = false;
  double pump_gvd_fs2 = 0.0;        // only used when pump_spm is on

  void validate() const;
};

struct CascadeConfig {
  std::vector<XpmModuleConfig> modules; // length 1 or 2
  double inter_module_gdd_fs2 = 0.0;

  void validate() const;
};

/// Sampled pump power P(t) in W on the grid. Requires >= 8 samples across
/// the pump FWHM.
std::vector<double> pump_power_profile(const PumpPulse& pump, const TimeGrid& grid);

/// Temporal phase kappa * P(t) in rad; with walkoff w > 0 the power profile
/// is averaged over a trailing window of w (discrete, >= 1 sample). With
/// pump_spm on, the profile is first propagated through a 64-step split-step
/// pass (SPM with this module's kappa plus pump_gvd) and sampled at the output.
std::vector<double> xpm_phase(const XpmModuleConfig& config, const TimeGrid& grid);

/// Multiply the field by exp(i phi(t)), then scale the amplitude by
/// 10^(-insertion_loss/20).
FieldEnvelope apply_module(const FieldEnvelope& field, const XpmModuleConfig& config);

/// Modules in order, with inter_module_gdd applied between them.
FieldEnvelope apply_cascade(const FieldEnvelope& field, const CascadeConfig& cascade);

/// Peak instantaneous frequency excursion of a single module in THz:
/// (1/2pi) kappa P0 (2 sqrt(2 ln2) / fwhm) e^{-1/2}, reached where the pump
/// slope is steepest (one sigma from the pump center).
double analytic_peak_shift_thz(const XpmModuleConfig& config);

/// Closed-form inverse of analytic_peak_shift_thz: kappa reproducing the
/// target peak shift at the given pump energy.
double calibrate_kappa(double target_peak_shift_thz, double at_energy_nj,
                       const PumpPulse& pump);

/// Repo default calibration: 3.3 THz peak shift at 100 nJ with the default
/// pump, so a two-module cascade spans the largest reported translations.
double default_kappa();

} // namespace xpmlab

#endif // XPMLAB_XPM_HPP
