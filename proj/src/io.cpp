#include "xpmlab/io.hpp"

#include <cstdio>
#include <fstream>

#include "xpmlab/errors.hpp"
#include "xpmlab/version.hpp"

namespace xpmlab::io {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open " + path + " for writing");
  return out;
}

void put_header(std::ofstream& out, const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << "\n";
}

} // namespace

std::vector<std::string> standard_header(const std::string& config_compact,
                                         const std::vector<std::string>& extra) {
  std::vector<std::string> lines;
  lines.push_back(std::string("xpmlab ") + kVersion);
  lines.push_back("config: " + config_compact);
  lines.insert(lines.end(), extra.begin(), extra.end());
  return lines;
}

void write_spectrum(const std::string& path, const Spectrum& spectrum,
                    const std::vector<std::string>& header) {
  auto out = open_out(path);
  put_header(out, header);
  out << "# columns: frequency_thz\tdensity"
      << (spectrum.unit_sum ? " (unit-sum per bin)" : " (per THz)") << "\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    out << fmt(spectrum.frequencies_thz[i]) << "\t" << fmt(spectrum.density[i]) << "\n";
  if (!out)
    throw IoError("failed while writing " + path);
}

void write_histogram(const std::string& path, const CountHistogram& hist,
                     const std::vector<std::string>& header) {
  auto out = open_out(path);
  put_header(out, header);
  out << "# total_pulses: " << hist.total_pulses << "\n";
  out << "# columns: bin_start_ps\tbin_end_ps\tcounts\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double start = hist.t_start_ps + static_cast<double>(i) * hist.bin_width_ps;
    out << fmt(start) << "\t" << fmt(start + hist.bin_width_ps) << "\t" << hist.counts[i]
        << "\n";
  }
  if (!out)
    throw IoError("failed while writing " + path);
}

void write_summary_table(const std::string& path,
                         const std::vector<std::pair<std::string, SpectralSummary>>& rows,
                         const std::vector<std::string>& header) {
  auto out = open_out(path);
  put_header(out, header);
  out << "# columns: label\tcenter_thz\tfwhm_thz\tshift_thz\tfactor\tsimilarity\n";
  for (const auto& [label, summary] : rows)
    out << label << "\t" << summary.to_line() << "\n";
  if (!out)
    throw IoError("failed while writing " + path);
}

void write_scan_matrix(const std::string& path, const std::vector<double>& delays_ps,
                       const std::vector<double>& frequencies_thz,
                       const std::vector<const Spectrum*>& rows,
                       const std::vector<std::string>& header) {
  if (delays_ps.size() != rows.size())
    throw ValidationError("write_scan_matrix: one delay per row required");
  auto out = open_out(path);
  put_header(out, header);
  out << "# columns: delay_ps then density per frequency bin\n";
  out << "# frequency_axis_thz:";
  for (double f : frequencies_thz) out << "\t" << fmt(f);
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << fmt(delays_ps[r]);
    for (double d : rows[r]->density) out << "\t" << fmt(d);
    out << "\n";
  }
  if (!out)
    throw IoError("failed while writing " + path);
}

void write_optimization(const std::string& path, const OptimizationResult& result,
                        const std::vector<std::string>& header) {
  auto out = open_out(path);
  put_header(out, header);
  out << "# best: E1_nj\tdt1_ps\tE2_nj\tdt2_ps\tobjective\tevaluations\trefined\n";
  out << fmt(result.params[0]) << "\t" << fmt(result.params[1]) << "\t"
      << fmt(result.params[2]) << "\t" << fmt(result.params[3]) << "\t"
      << fmt(result.objective) << "\t" << result.evaluations << "\t"
      << (result.refined ? 1 : 0) << "\n";
  out << "# achieved: center_thz\tfwhm_thz\tshift_thz\tfactor\tsimilarity\n";
  out << result.achieved.to_line() << "\n";
  out << "# trace columns: evaluation\tE1_nj\tdt1_ps\tE2_nj\tdt2_ps\tobjective\n";
  for (const auto& entry : result.trace)
    out << entry.evaluation << "\t" << fmt(entry.params[0]) << "\t" << fmt(entry.params[1])
        << "\t" << fmt(entry.params[2]) << "\t" << fmt(entry.params[3]) << "\t"
        << fmt(entry.objective) << "\n";
  if (!out)
    throw IoError("failed while writing " + path);
}

} // namespace xpmlab::io
