#include "xpmlab/commands.hpp"

#include <cstdio>
#include <filesystem>

#include "xpmlab/errors.hpp"
#include "xpmlab/io.hpp"

namespace xpmlab {

namespace {

namespace fs = std::filesystem;

std::string format_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string prepare_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
  return out_dir;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

} // namespace

std::vector<std::string> cmd_simulate(const ExperimentConfig& cfg,
                                      const std::string& out_dir) {
  prepare_dir(out_dir);
  const auto header = io::standard_header(serialize_config_compact(cfg));

  const FieldEnvelope input = make_signal(cfg);
  const FieldEnvelope output = apply_cascade(input, make_cascade(cfg));
  const Spectrum in_spec = make_unit_sum(power_spectrum(input));
  const Spectrum out_spec = make_unit_sum(power_spectrum(output));

  std::vector<std::string> written;
  written.push_back(join(out_dir, "input_spectrum.tsv"));
  io::write_spectrum(written.back(), in_spec, header);
  written.push_back(join(out_dir, "output_spectrum.tsv"));
  io::write_spectrum(written.back(), out_spec, header);

  std::vector<std::pair<std::string, SpectralSummary>> rows;
  rows.emplace_back("input", summarize(in_spec, in_spec));
  rows.emplace_back("output", summarize(out_spec, in_spec));
  written.push_back(join(out_dir, "summary.tsv"));
  io::write_summary_table(written.back(), rows, header);
  return written;
}

std::vector<std::string> cmd_scan(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare_dir(out_dir);
  const auto header = io::standard_header(serialize_config_compact(cfg));

  const ScanSpec spec = make_scan_spec(cfg);
  std::size_t scanned_module = 0;
  bool found = false;
  for (std::size_t m = 0; m < spec.delays_ps.size(); ++m) {
    if (spec.delays_ps[m].size() > 1) {
      if (found)
        throw ConfigError("scan.delays_ps: matrix export needs exactly one module "
                          "with more than one delay");
      scanned_module = m;
      found = true;
    }
  }
  if (!found) scanned_module = 0;

  const FieldEnvelope input = make_signal(cfg);
  const ScanResult result = run_delay_scan(spec, input);

  const std::size_t n_delays = spec.delays_ps[scanned_module].size();
  const std::size_t n_combos = result.points.size() / n_delays;

  std::vector<std::string> written;
  std::vector<std::pair<std::string, SpectralSummary>> summary_rows;
  for (std::size_t combo = 0; combo < n_combos; ++combo) {
    std::vector<double> delays;
    std::vector<const Spectrum*> rows;
    for (std::size_t d = 0; d < n_delays; ++d) {
      const ScanPoint& point = result.points[combo * n_delays + d];
      delays.push_back(point.delays_ps[scanned_module]);
      rows.push_back(&point.spectrum);
      std::string label = "E";
      for (std::size_t m = 0; m < point.energies_nj.size(); ++m)
        label += (m ? "/" : "") + format_num(point.energies_nj[m]);
      label += " dt";
      for (std::size_t m = 0; m < point.delays_ps.size(); ++m)
        label += (m ? "/" : "") + format_num(point.delays_ps[m]);
      summary_rows.emplace_back(label, point.summary);
    }
    const ScanPoint& first = result.points[combo * n_delays];
    std::string tag;
    for (std::size_t m = 0; m < first.energies_nj.size(); ++m)
      tag += (m ? "_" : "") + format_num(first.energies_nj[m]);
    written.push_back(join(out_dir, "scan_matrix_E" + tag + "nJ.tsv"));
    io::write_scan_matrix(written.back(), delays,
                          result.input_spectrum.frequencies_thz, rows, header);
  }
  written.push_back(join(out_dir, "scan_summary.tsv"));
  io::write_summary_table(written.back(), summary_rows, header);
  return written;
}

namespace {

std::vector<std::string> run_optimize(const ExperimentConfig& cfg, const std::string& out_dir,
                                      ObjectiveSpec::Kind kind) {
  prepare_dir(out_dir);
  const auto header = io::standard_header(serialize_config_compact(cfg));

  ObjectiveSpec objective = make_objective(cfg);
  objective.kind = kind;
  const ForwardModel model(make_signal(cfg), make_cascade(cfg));
  const OptimizationResult result = optimize(objective, model);

  std::vector<std::string> written;
  written.push_back(join(out_dir, "optimization.tsv"));
  io::write_optimization(written.back(), result, header);

  written.push_back(join(out_dir, "input_spectrum.tsv"));
  io::write_spectrum(written.back(), model.input_spectrum, header);
  written.push_back(join(out_dir, "achieved_spectrum.tsv"));
  io::write_spectrum(written.back(), model.evaluate(result.params), header);
  if (kind == ObjectiveSpec::Kind::shift) {
    const double dnu = model.input_spectrum.frequencies_thz[1] -
                       model.input_spectrum.frequencies_thz[0];
    written.push_back(join(out_dir, "target_spectrum.tsv"));
    io::write_spectrum(written.back(),
                       roll(model.input_spectrum,
                            std::lround(objective.target_shift_thz / dnu)),
                       header);
  }
  return written;
}

} // namespace

std::vector<std::string> cmd_shift(const ExperimentConfig& cfg, const std::string& out_dir) {
  return run_optimize(cfg, out_dir, ObjectiveSpec::Kind::shift);
}

std::vector<std::string> cmd_bandwidth(const ExperimentConfig& cfg,
                                       const std::string& out_dir) {
  return run_optimize(cfg, out_dir, ObjectiveSpec::Kind::bandwidth);
}

std::vector<std::string> cmd_counts(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare_dir(out_dir);

  const FieldEnvelope input = make_signal(cfg);
  const FieldEnvelope output = apply_cascade(input, make_cascade(cfg));
  // Loss never reshapes normalized spectra; report it so detection_eff can be
  // budgeted explicitly.
  const double transmission =
      input.total_power() > 0.0 ? output.total_power() / input.total_power() : 0.0;
  const auto header =
      io::standard_header(serialize_config_compact(cfg),
                          {"cascade_power_transmission: " + std::to_string(transmission)});
  const Spectrum truth = make_unit_sum(power_spectrum(output));
  const TimePdf pdf = arrival_time_pdf(truth, cfg.spectrometer);

  std::vector<std::string> written;
  std::vector<CountHistogram> hists;
  std::vector<std::pair<std::string, SpectralSummary>> rows;
  const Spectrum reference = make_unit_sum(power_spectrum(input));
  for (std::size_t rep = 0; rep < cfg.counting.repetitions; ++rep) {
    CountingConfig counting = make_counting(cfg);
    counting.rng_seed = cfg.rng_seed + rep; // per-repetition seed derivation
    hists.push_back(simulate_counts(pdf, counting));

    written.push_back(join(out_dir, "histogram_" + std::to_string(rep) + ".tsv"));
    io::write_histogram(written.back(), hists.back(), header);

    const Spectrum rec = resample(reconstruct_spectrum(hists.back(), cfg.spectrometer),
                                  reference.frequencies_thz);
    written.push_back(join(out_dir, "reconstructed_" + std::to_string(rep) + ".tsv"));
    io::write_spectrum(written.back(), rec, header);
    rows.emplace_back("rep" + std::to_string(rep), summarize(rec, reference));
  }

  const CountHistogram pooled = pool_histograms(hists);
  written.push_back(join(out_dir, "histogram_pooled.tsv"));
  io::write_histogram(written.back(), pooled, header);
  const Spectrum pooled_rec = resample(reconstruct_spectrum(pooled, cfg.spectrometer),
                                       reference.frequencies_thz);
  written.push_back(join(out_dir, "reconstructed_pooled.tsv"));
  io::write_spectrum(written.back(), pooled_rec, header);
  rows.emplace_back("pooled", summarize(pooled_rec, reference));

  written.push_back(join(out_dir, "counts_summary.tsv"));
  io::write_summary_table(written.back(), rows, header);
  return written;
}

} // namespace xpmlab
