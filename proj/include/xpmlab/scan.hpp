#ifndef XPMLAB_SCAN_HPP
#define XPMLAB_SCAN_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "xpmlab/field.hpp"
#include "xpmlab/metrics.hpp"
#include "xpmlab/tof.hpp"
#include "xpmlab/xpm.hpp"

namespace xpmlab {

/// Delay/energy scan over a fixed cascade template. Per module, a list of
/// delays and a list of energies; the scan covers the cartesian product.
/// noiseless = true records analytic spectra; false pushes every point
/// through the detection chain (seed derived as rng_seed + point index).
struct ScanSpec {
  CascadeConfig cascade;
  std::vector<std::vector<double>> delays_ps;   // one list per module
  std::vector<std::vector<double>> energies_nj; // one list per module
  bool noiseless = true;
  SpectrometerConfig spectrometer;
  CountingConfig counting;

  void validate() const;
};

struct ScanPoint {
  std::vector<double> delays_ps;
  std::vector<double> energies_nj;
  Spectrum spectrum; // unit-sum
  SpectralSummary summary;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  Spectrum input_spectrum; // unit-sum reference
};

ScanResult run_delay_scan(const ScanSpec& spec, const FieldEnvelope& input);

/// What the optimizer is asked to do. Bounds apply per module.
struct ObjectiveSpec {
  enum class Kind { shift, bandwidth };
  Kind kind = Kind::shift;
  double target_shift_thz = 0.0;
  double target_fwhm_thz = 0.0;
  double center_penalty_weight = 1.0;
  std::array<double, 2> energy_bounds_nj{0.0, 120.0};
  std::array<double, 2> delay_bounds_ps{-2.0, 2.0};

  void validate() const;
};

/// Noiseless forward model the objectives are evaluated on: a fixed input
/// pulse and a two-module cascade template whose energies/delays are the
/// four free parameters (E1, dt1, E2, dt2).
struct ForwardModel {
  FieldEnvelope input;
  CascadeConfig cascade;

  ForwardModel(FieldEnvelope in, CascadeConfig casc);

  Spectrum input_spectrum; // unit-sum, cached
  double input_center_thz = 0.0;
  double input_fwhm_thz = 0.0;

  /// Unit-sum output spectrum for params = (E1 nJ, dt1 ps, E2 nJ, dt2 ps).
  Spectrum evaluate(const std::array<double, 4>& params) const;
};

/// 1 - S(simulated, input rolled by the integer-bin image of target_shift).
double shift_objective(const ForwardModel& model, const std::array<double, 4>& params,
                       double target_shift_thz);

/// |fwhm - target|/target + w * |center shift| / input fwhm.
double bandwidth_objective(const ForwardModel& model, const std::array<double, 4>& params,
                           double target_fwhm_thz, double center_penalty_weight);

struct TraceEntry {
  std::array<double, 4> params;
  double objective;
  std::uint64_t evaluation;
};

struct OptimizationResult {
  std::array<double, 4> params{}; // E1 nJ, dt1 ps, E2 nJ, dt2 ps
  SpectralSummary achieved;
  double objective = 0.0;
  std::uint64_t evaluations = 0;
  bool refined = false; // false: simplex found no improvement over the grid
  std::vector<TraceEntry> trace; // accepted best-so-far, nonincreasing
};

/// Two-stage deterministic search: a 9x9x9x9 coarse grid over the bounds
/// (ties broken toward the lowest total pump energy), then Nelder-Mead
/// refinement from the best grid point, stopping when the simplex objective
/// spread drops below 1e-4 or after 500 refinement evaluations.
OptimizationResult optimize(const ObjectiveSpec& spec, const ForwardModel& model);

} // namespace xpmlab

#endif // XPMLAB_SCAN_HPP
