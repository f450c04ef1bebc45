#ifndef BELLSIM_REPORT_HPP
#define BELLSIM_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellsim/chsh_stats.hpp"
#include "bellsim/coincidence.hpp"

namespace bellsim {

struct RunReport {
  std::string scenario;  // scenario name, or "Analyze" for the offline path
  std::uint64_t seed = 0;
  std::int64_t n_pairs = 0;  // emitted pairs; 0 for the offline path
  std::int64_t window_ns = 0;
  ChshResult chsh;
  std::int64_t matched_pairs = 0;
  std::int64_t total_alice = 0;
  std::int64_t total_bob = 0;
  CoincidenceTally tally;
  std::optional<bool> monitor_alarm;  // absent for the offline path
  double alarm_threshold = 0.0;
  double avg_power_alice = 0.0;
  double avg_power_bob = 0.0;
};

struct SweepPoint {
  double q = 0.0;
  double S_programmed = 0.0;
  double S_observed = 0.0;
  double dS = 0.0;
};

struct SweepReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::int64_t n_pairs = 0;  // per sweep point
  std::vector<SweepPoint> points;
};

nlohmann::json report_to_json(const RunReport& report);
nlohmann::json report_to_json(const SweepReport& report);

// dump(2) with a trailing newline; stable byte-for-byte for equal reports.
std::string report_json_string(const RunReport& report);
std::string report_json_string(const SweepReport& report);

// fig3_sweep.csv: header q,S_programmed,S_observed,dS.
std::string sweep_csv_string(const std::vector<SweepPoint>& points);

// fig4_matrix.csv: 16 rows x 16 comma-separated counts, rows = programmed
// pulse-pair combination, columns = detected combination.
std::string sent_matrix_csv_string(const CoincidenceTally& tally);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace bellsim

#endif
