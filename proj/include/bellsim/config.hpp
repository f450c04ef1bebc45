#ifndef BELLSIM_CONFIG_HPP
#define BELLSIM_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellsim/detectors.hpp"
#include "bellsim/sources.hpp"

namespace bellsim {

enum class Scenario { Genuine, InterceptResend, TwinFsgPassive, TwinFsgActive };

const char* to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

bool is_fsg_scenario(Scenario s);

struct FakedStateParams {
  double trigger_power = 1.0;
  double blinding_power_per_channel = 0.15;
};

struct EveConfig {
  bool enabled = false;
  double eta = 1.0;
};

struct MonitorConfig {
  double alarm_threshold = 0.05;
};

struct PartyConfig {
  DetectorParams detector;
  AnalyzerConfig analyzer;
};

struct RunConfig {
  Scenario scenario = Scenario::Genuine;
  std::uint64_t seed = 1;
  std::int64_t n_pairs = 100000;
  std::int64_t window_ns = 5;
  SourceConfig source;
  std::optional<double> fsg_q;
  std::optional<std::array<double, 16>> fsg_matrix;
  FakedStateParams faked_state;
  EveConfig eve;
  PartyConfig alice;
  PartyConfig bob;
  MonitorConfig monitor;
  std::vector<double> q_sweep;
};

// Scenario presets: analyzer geometry, outcome-label calibration, detector
// thresholds and a reasonable run length for each pipeline.
RunConfig default_config(Scenario scenario);

// Throws ConfigError on out-of-range values or scenario/section mismatches.
void validate(const RunConfig& config);

// The programmed table of an FSG scenario (explicit matrix wins over q).
FsgProgram fsg_program_from_config(const RunConfig& config);

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config_file(const std::string& path);

}  // namespace bellsim

#endif
