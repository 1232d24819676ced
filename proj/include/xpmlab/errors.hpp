#ifndef XPMLAB_ERRORS_HPP
#define XPMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xpmlab {

// Error classes map to CLI exit codes (see tools/main.cpp and README):
//   ConfigError -> 2, ValidationError -> 3, ModelError -> 4, IoError -> 5.

/// Malformed or contradictory configuration input.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Precondition violation on an operation (bad grids, mismatched lengths, ...).
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Failure while evaluating the model itself (window overflow, degenerate data, ...).
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem / output failure.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace xpmlab

#endif // XPMLAB_ERRORS_HPP
