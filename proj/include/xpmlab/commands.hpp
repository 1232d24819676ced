#ifndef XPMLAB_COMMANDS_HPP
#define XPMLAB_COMMANDS_HPP

#include <string>
#include <vector>

#include "xpmlab/config.hpp"

namespace xpmlab {

// Subcommand bodies, separated from the CLI shell so tests can drive them.
// Each writes its files under out_dir and returns the list of paths written.

std::vector<std::string> cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> cmd_scan(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> cmd_shift(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> cmd_bandwidth(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> cmd_counts(const ExperimentConfig& cfg, const std::string& out_dir);

} // namespace xpmlab

#endif // XPMLAB_COMMANDS_HPP
