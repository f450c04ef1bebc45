#include "bellsim/report.hpp"

#include <cstdio>
#include <fstream>

#include "bellsim/errors.hpp"

namespace bellsim {

namespace {

constexpr std::array<const char*, 4> kSettingNames{"AB", "ApB", "ABp", "ApBp"};

nlohmann::json correlator_to_json(const Correlator& c, const char* setting) {
  return {{"setting", setting},
          {"E", c.E},
          {"dE", c.dE},
          {"counts",
           {{"n11", c.counts[0]},
            {"n10", c.counts[1]},
            {"n01", c.counts[2]},
            {"n00", c.counts[3]}}}};
}

nlohmann::json chsh_to_json(const ChshResult& r) {
  nlohmann::json correlators = nlohmann::json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    correlators.push_back(correlator_to_json(r.correlators[i], kSettingNames[i]));
  }
  return {{"S", r.S},
          {"dS", r.dS},
          {"classification", to_string(r.classification)},
          {"correlators", correlators}};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json report_to_json(const RunReport& rep) {
  nlohmann::json j{
      {"schema_version", 1},
      {"kind", rep.scenario == "Analyze" ? "analyze" : "run"},
      {"scenario", rep.scenario},
      {"window_ns", rep.window_ns},
      {"chsh", chsh_to_json(rep.chsh)},
      {"efficiency",
       {{"alice", rep.chsh.efficiency.alice}, {"bob", rep.chsh.efficiency.bob}}},
      {"counts",
       {{"matched_pairs", rep.matched_pairs},
        {"unmatched_alice", rep.tally.unmatched_a},
        {"unmatched_bob", rep.tally.unmatched_b},
        {"total_alice", rep.total_alice},
        {"total_bob", rep.total_bob}}},
  };
  if (rep.scenario != "Analyze") {
    j["seed"] = rep.seed;
    j["n_pairs"] = rep.n_pairs;
  }
  if (rep.monitor_alarm) {
    j["monitor"] = {{"alarm", *rep.monitor_alarm},
                    {"alarm_threshold", rep.alarm_threshold},
                    {"avg_power_alice", rep.avg_power_alice},
                    {"avg_power_bob", rep.avg_power_bob}};
  }
  return j;
}

nlohmann::json report_to_json(const SweepReport& rep) {
  nlohmann::json points = nlohmann::json::array();
  for (const SweepPoint& p : rep.points) {
    points.push_back({{"q", p.q},
                      {"S_programmed", p.S_programmed},
                      {"S_observed", p.S_observed},
                      {"dS", p.dS}});
  }
  return {{"schema_version", 1},
          {"kind", "sweep"},
          {"scenario", rep.scenario},
          {"seed", rep.seed},
          {"n_pairs", rep.n_pairs},
          {"points", points}};
}

std::string report_json_string(const RunReport& rep) {
  return report_to_json(rep).dump(2) + "\n";
}

std::string report_json_string(const SweepReport& rep) {
  return report_to_json(rep).dump(2) + "\n";
}

std::string sweep_csv_string(const std::vector<SweepPoint>& points) {
  std::string out = "q,S_programmed,S_observed,dS\n";
  for (const SweepPoint& p : points) {
    out += format_double(p.q) + "," + format_double(p.S_programmed) + "," +
           format_double(p.S_observed) + "," + format_double(p.dS) + "\n";
  }
  return out;
}

std::string sent_matrix_csv_string(const CoincidenceTally& tally) {
  std::string out;
  char buf[32];
  for (int row = 0; row < 16; ++row) {
    for (int col = 0; col < 16; ++col) {
      std::snprintf(buf, sizeof buf, "%lld",
                    static_cast<long long>(
                        tally.sent_vs_detected[static_cast<std::size_t>(row * 16 + col)]));
      out += buf;
      out += (col == 15) ? '\n' : ',';
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AnalysisError("cannot open " + path + " for writing");
  out << content;
}

}  // namespace bellsim
