#ifndef BELLSIM_ERRORS_HPP
#define BELLSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bellsim {

// Invalid or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure while analyzing event data: parse errors, zero coincidences,
// undefined correlators (CLI exit code 3).
class AnalysisError : public std::runtime_error {
 public:
  explicit AnalysisError(const std::string& msg) : std::runtime_error(msg) {}
};

// A correlator was requested from an empty counts cell combination.
class UndefinedCorrelatorError : public AnalysisError {
 public:
  explicit UndefinedCorrelatorError(const std::string& msg) : AnalysisError(msg) {}
};

}  // namespace bellsim

#endif
