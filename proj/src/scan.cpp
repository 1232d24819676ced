#include "xpmlab/scan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "xpmlab/errors.hpp"

namespace xpmlab {

namespace {

// Deterministic chunked parallel map: worker i fills indices [lo, hi), so
// results never depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (std::size_t w = 0; w < n_threads; ++w) {
    const std::size_t lo = count * w / n_threads;
    const std::size_t hi = count * (w + 1) / n_threads;
    workers.emplace_back([lo, hi, &fn]() {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

} // namespace

void ScanSpec::validate() const {
  cascade.validate();
  if (delays_ps.size() != cascade.modules.size() ||
      energies_nj.size() != cascade.modules.size())
    throw ValidationError("ScanSpec: need one delay list and one energy list per module");
  for (const auto& list : delays_ps) {
    if (list.empty())
      throw ValidationError("ScanSpec: empty delay list");
    if (!std::is_sorted(list.begin(), list.end()))
      throw ValidationError("ScanSpec: delay lists must be sorted");
  }
  for (const auto& list : energies_nj) {
    if (list.empty())
      throw ValidationError("ScanSpec: empty energy list");
    if (!std::is_sorted(list.begin(), list.end()))
      throw ValidationError("ScanSpec: energy lists must be sorted");
  }
  spectrometer.validate();
  counting.validate();
}

ScanResult run_delay_scan(const ScanSpec& spec, const FieldEnvelope& input) {
  spec.validate();
  const std::size_t n_modules = spec.cascade.modules.size();

  // Multi-index over energies (outer, module 0 slowest) then delays.
  std::vector<std::size_t> e_sizes(n_modules), d_sizes(n_modules);
  std::size_t n_energy = 1, n_delay = 1;
  for (std::size_t m = 0; m < n_modules; ++m) {
    e_sizes[m] = spec.energies_nj[m].size();
    d_sizes[m] = spec.delays_ps[m].size();
    n_energy *= e_sizes[m];
    n_delay *= d_sizes[m];
  }
  const std::size_t n_points = n_energy * n_delay;

  ScanResult result;
  result.input_spectrum = make_unit_sum(power_spectrum(input));
  result.points.resize(n_points);

  parallel_for(n_points, [&](std::size_t idx) {
    std::size_t e_idx = idx / n_delay;
    std::size_t d_idx = idx % n_delay;

    CascadeConfig cascade = spec.cascade;
    ScanPoint& point = result.points[idx];
    point.energies_nj.resize(n_modules);
    point.delays_ps.resize(n_modules);
    for (std::size_t m = n_modules; m-- > 0;) {
      point.energies_nj[m] = spec.energies_nj[m][e_idx % e_sizes[m]];
      e_idx /= e_sizes[m];
      point.delays_ps[m] = spec.delays_ps[m][d_idx % d_sizes[m]];
      d_idx /= d_sizes[m];
      cascade.modules[m].pump.energy_nj = point.energies_nj[m];
      cascade.modules[m].pump.delay_ps = point.delays_ps[m];
    }

    const FieldEnvelope out = apply_cascade(input, cascade);
    Spectrum spectrum = make_unit_sum(power_spectrum(out));
    if (!spec.noiseless) {
      const TimePdf pdf = arrival_time_pdf(spectrum, spec.spectrometer);
      CountingConfig counting = spec.counting;
      counting.rng_seed = spec.counting.rng_seed + idx; // documented derivation
      const CountHistogram hist = simulate_counts(pdf, counting);
      spectrum = resample(reconstruct_spectrum(hist, spec.spectrometer),
                          result.input_spectrum.frequencies_thz);
    }
    point.summary = summarize(spectrum, result.input_spectrum);
    point.spectrum = std::move(spectrum);
  });

  return result;
}

void ObjectiveSpec::validate() const {
  if (kind == Kind::shift) {
    if (!std::isfinite(target_shift_thz))
      throw ValidationError("ObjectiveSpec: target_shift must be finite");
  } else {
    if (!(target_fwhm_thz > 0.0))
      throw ValidationError("ObjectiveSpec: target_fwhm must be > 0 THz");
  }
  if (center_penalty_weight < 0.0)
    throw ValidationError("ObjectiveSpec: center_penalty_weight must be >= 0");
  if (!(energy_bounds_nj[1] > energy_bounds_nj[0]) || energy_bounds_nj[0] < 0.0 ||
      !std::isfinite(energy_bounds_nj[1]))
    throw ValidationError("ObjectiveSpec: energy bounds must be finite with hi > lo >= 0");
  if (!(delay_bounds_ps[1] > delay_bounds_ps[0]) || !std::isfinite(delay_bounds_ps[0]) ||
      !std::isfinite(delay_bounds_ps[1]))
    throw ValidationError("ObjectiveSpec: delay bounds must be finite with hi > lo");
}

ForwardModel::ForwardModel(FieldEnvelope in, CascadeConfig casc)
    : input(std::move(in)), cascade(std::move(casc)) {
  cascade.validate();
  input_spectrum = make_unit_sum(power_spectrum(input));
  input_center_thz = center_frequency_thz(input_spectrum);
  input_fwhm_thz = fwhm_thz(input_spectrum);
}

Spectrum ForwardModel::evaluate(const std::array<double, 4>& params) const {
  CascadeConfig c = cascade;
  for (std::size_t m = 0; m < c.modules.size(); ++m) {
    c.modules[m].pump.energy_nj = params[2 * m];
    c.modules[m].pump.delay_ps = params[2 * m + 1];
  }
  return make_unit_sum(power_spectrum(apply_cascade(input, c)));
}

double shift_objective(const ForwardModel& model, const std::array<double, 4>& params,
                       double target_shift_thz) {
  const Spectrum sim = model.evaluate(params);
  const double dnu = model.input_spectrum.frequencies_thz[1] -
                     model.input_spectrum.frequencies_thz[0];
  const long bins = std::lround(target_shift_thz / dnu);
  const Spectrum reference = roll(model.input_spectrum, bins);
  return 1.0 - similarity(sim, reference);
}

double bandwidth_objective(const ForwardModel& model, const std::array<double, 4>& params,
                           double target_fwhm_thz, double center_penalty_weight) {
  const Spectrum sim = model.evaluate(params);
  const double width = fwhm_thz(sim);
  const double center = center_frequency_thz(sim);
  return std::abs(width - target_fwhm_thz) / target_fwhm_thz +
         center_penalty_weight * std::abs(center - model.input_center_thz) /
             model.input_fwhm_thz;
}

namespace {

double objective_value(const ObjectiveSpec& spec, const ForwardModel& model,
                       const std::array<double, 4>& params) {
  if (spec.kind == ObjectiveSpec::Kind::shift)
    return shift_objective(model, params, spec.target_shift_thz);
  return bandwidth_objective(model, params, spec.target_fwhm_thz,
                             spec.center_penalty_weight);
}

constexpr std::size_t kGridPointsPerAxis = 9;
constexpr std::size_t kRefineBudget = 500;
constexpr double kObjectiveTol = 1e-4;

} // namespace

OptimizationResult optimize(const ObjectiveSpec& spec, const ForwardModel& model) {
  spec.validate();
  const std::size_t n_modules = model.cascade.modules.size();
  const std::size_t ndim = 2 * n_modules;

  std::vector<std::vector<double>> axes(ndim);
  for (std::size_t m = 0; m < n_modules; ++m) {
    axes[2 * m] = linspace(spec.energy_bounds_nj[0], spec.energy_bounds_nj[1],
                           kGridPointsPerAxis);
    axes[2 * m + 1] = linspace(spec.delay_bounds_ps[0], spec.delay_bounds_ps[1],
                               kGridPointsPerAxis);
  }

  std::size_t n_grid = 1;
  for (std::size_t d = 0; d < ndim; ++d) n_grid *= kGridPointsPerAxis;

  auto params_at = [&](std::size_t idx) {
    std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
    for (std::size_t d = ndim; d-- > 0;) {
      p[d] = axes[d][idx % kGridPointsPerAxis];
      idx /= kGridPointsPerAxis;
    }
    return p;
  };

  std::vector<double> grid_obj(n_grid);
  parallel_for(n_grid, [&](std::size_t idx) {
    grid_obj[idx] = objective_value(spec, model, params_at(idx));
  });

  auto total_energy = [](const std::array<double, 4>& p) { return p[0] + p[2]; };

  std::size_t best_idx = 0;
  for (std::size_t idx = 1; idx < n_grid; ++idx) {
    if (grid_obj[idx] < grid_obj[best_idx] ||
        (grid_obj[idx] == grid_obj[best_idx] &&
         total_energy(params_at(idx)) < total_energy(params_at(best_idx))))
      best_idx = idx;
  }

  OptimizationResult result;
  result.params = params_at(best_idx);
  result.objective = grid_obj[best_idx];
  result.evaluations = n_grid;
  result.trace.push_back({result.params, result.objective, result.evaluations});

  // Nelder-Mead refinement from the best grid point, clamped to the bounds.
  auto clamp = [&](std::array<double, 4>& p) {
    for (std::size_t m = 0; m < n_modules; ++m) {
      p[2 * m] = std::clamp(p[2 * m], spec.energy_bounds_nj[0], spec.energy_bounds_nj[1]);
      p[2 * m + 1] =
          std::clamp(p[2 * m + 1], spec.delay_bounds_ps[0], spec.delay_bounds_ps[1]);
    }
  };

  std::size_t refine_evals = 0;
  auto eval = [&](std::array<double, 4> p) {
    clamp(p);
    ++refine_evals;
    const double f = objective_value(spec, model, p);
    if (f < result.objective) {
      result.objective = f;
      result.params = p;
      result.refined = true;
      result.trace.push_back({p, f, result.evaluations + refine_evals});
    }
    return f;
  };

  struct Vertex {
    std::array<double, 4> x;
    double f;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(ndim + 1);
  {
    std::array<double, 4> x0 = params_at(best_idx);
    simplex.push_back({x0, grid_obj[best_idx]});
    for (std::size_t d = 0; d < ndim; ++d) {
      std::array<double, 4> x = x0;
      const double lo = (d % 2 == 0) ? spec.energy_bounds_nj[0] : spec.delay_bounds_ps[0];
      const double hi = (d % 2 == 0) ? spec.energy_bounds_nj[1] : spec.delay_bounds_ps[1];
      const double step = 0.1 * (hi - lo);
      x[d] += (x[d] + step <= hi) ? step : -step;
      clamp(x);
      simplex.push_back({x, eval(x)});
    }
  }

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  while (refine_evals < kRefineBudget) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (simplex.back().f - simplex.front().f < kObjectiveTol) break;

    std::array<double, 4> centroid{0.0, 0.0, 0.0, 0.0};
    for (std::size_t v = 0; v < simplex.size() - 1; ++v)
      for (std::size_t d = 0; d < ndim; ++d) centroid[d] += simplex[v].x[d];
    for (std::size_t d = 0; d < ndim; ++d)
      centroid[d] /= static_cast<double>(simplex.size() - 1);

    const Vertex& worst = simplex.back();
    std::array<double, 4> reflected{0.0, 0.0, 0.0, 0.0};
    for (std::size_t d = 0; d < ndim; ++d)
      reflected[d] = centroid[d] + alpha * (centroid[d] - worst.x[d]);
    clamp(reflected);
    const double f_reflected = eval(reflected);

    if (f_reflected < simplex.front().f) {
      std::array<double, 4> expanded{0.0, 0.0, 0.0, 0.0};
      for (std::size_t d = 0; d < ndim; ++d)
        expanded[d] = centroid[d] + gamma * (reflected[d] - centroid[d]);
      clamp(expanded);
      const double f_expanded = eval(expanded);
      simplex.back() = (f_expanded < f_reflected) ? Vertex{expanded, f_expanded}
                                                  : Vertex{reflected, f_reflected};
    } else if (f_reflected < simplex[simplex.size() - 2].f) {
      simplex.back() = {reflected, f_reflected};
    } else {
      std::array<double, 4> contracted{0.0, 0.0, 0.0, 0.0};
      for (std::size_t d = 0; d < ndim; ++d)
        contracted[d] = centroid[d] + rho * (worst.x[d] - centroid[d]);
      clamp(contracted);
      const double f_contracted = eval(contracted);
      if (f_contracted < worst.f) {
        simplex.back() = {contracted, f_contracted};
      } else {
        for (std::size_t v = 1; v < simplex.size(); ++v) {
          for (std::size_t d = 0; d < ndim; ++d)
            simplex[v].x[d] =
                simplex[0].x[d] + sigma * (simplex[v].x[d] - simplex[0].x[d]);
          clamp(simplex[v].x);
          simplex[v].f = eval(simplex[v].x);
          if (refine_evals >= kRefineBudget) break;
        }
      }
    }
  }

  result.evaluations += refine_evals;

  // Achieved summary against the input, with the similarity target matching
  // the objective (translated input for shift mode).
  const Spectrum achieved_spectrum = model.evaluate(result.params);
  std::optional<Spectrum> target;
  if (spec.kind == ObjectiveSpec::Kind::shift) {
    const double dnu = model.input_spectrum.frequencies_thz[1] -
                       model.input_spectrum.frequencies_thz[0];
    target = roll(model.input_spectrum, std::lround(spec.target_shift_thz / dnu));
  }
  result.achieved = summarize(achieved_spectrum, model.input_spectrum, target);
  return result;
}

} // namespace xpmlab
