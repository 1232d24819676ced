#ifndef XPMLAB_IO_HPP
#define XPMLAB_IO_HPP

#include <string>
#include <vector>

#include "xpmlab/metrics.hpp"
#include "xpmlab/scan.hpp"
#include "xpmlab/spectrum.hpp"
#include "xpmlab/tof.hpp"

namespace xpmlab::io {

// All outputs are plain-text tab-delimited tables with '#'-prefixed header
// lines. Every file carries the artifact version and the fully resolved
// config so a run can be reproduced from any one of its outputs. Numeric
// formatting is fixed, so identical config + seed means identical bytes.

/// "# xpmlab <version>" + one "# config: ..." line + extras.
std::vector<std::string> standard_header(const std::string& config_compact,
                                         const std::vector<std::string>& extra = {});

void write_spectrum(const std::string& path, const Spectrum& spectrum,
                    const std::vector<std::string>& header);

void write_histogram(const std::string& path, const CountHistogram& hist,
                     const std::vector<std::string>& header);

void write_summary_table(const std::string& path,
                         const std::vector<std::pair<std::string, SpectralSummary>>& rows,
                         const std::vector<std::string>& header);

/// Delay-scan heatmap matrix: one row per delay, one column per frequency bin.
void write_scan_matrix(const std::string& path, const std::vector<double>& delays_ps,
                       const std::vector<double>& frequencies_thz,
                       const std::vector<const Spectrum*>& rows,
                       const std::vector<std::string>& header);

void write_optimization(const std::string& path, const OptimizationResult& result,
                        const std::vector<std::string>& header);

} // namespace xpmlab::io

#endif // XPMLAB_IO_HPP
