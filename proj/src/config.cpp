#include "bellsim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "bellsim/errors.hpp"

namespace bellsim {

namespace {

void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

double get_number(const nlohmann::json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError("\"" + key + "\" must be a number");
  return obj[key].get<double>();
}

DetectorParams detector_from_json(const nlohmann::json& j, DetectorParams base,
                                  const std::string& where) {
  require_keys(j, {"eta", "dark_rate_hz", "click_threshold", "blind_threshold",
                   "imperfection_eps"},
               where);
  base.eta = get_number(j, "eta", base.eta);
  base.dark_rate = get_number(j, "dark_rate_hz", base.dark_rate);
  base.click_threshold = get_number(j, "click_threshold", base.click_threshold);
  base.blind_threshold = get_number(j, "blind_threshold", base.blind_threshold);
  base.imperfection_eps = get_number(j, "imperfection_eps", base.imperfection_eps);
  return base;
}

AnalyzerConfig analyzer_from_json(const nlohmann::json& j, AnalyzerConfig base,
                                  const std::string& where) {
  require_keys(j, {"choice", "party_rotation_deg", "parallel_is_one", "block_length"},
               where);
  if (j.contains("choice")) {
    const std::string choice = j["choice"].get<std::string>();
    if (choice == "Passive") {
      base.choice = BasisChoice::Passive;
    } else if (choice == "Active") {
      base.choice = BasisChoice::Active;
    } else {
      throw ConfigError(where + ": choice must be \"Passive\" or \"Active\"");
    }
  }
  base.party_rotation_deg = get_number(j, "party_rotation_deg", base.party_rotation_deg);
  if (j.contains("parallel_is_one")) {
    const auto& arr = j["parallel_is_one"];
    if (!arr.is_array() || arr.size() != 2) {
      throw ConfigError(where + ": parallel_is_one must be an array of two booleans");
    }
    base.outcome_labels.parallel_is_one = {arr[0].get<bool>(), arr[1].get<bool>()};
  }
  if (j.contains("block_length")) base.block_length = j["block_length"].get<int>();
  return base;
}

nlohmann::json detector_to_json(const DetectorParams& d) {
  return {{"eta", d.eta},
          {"dark_rate_hz", d.dark_rate},
          {"click_threshold", d.click_threshold},
          {"blind_threshold", d.blind_threshold},
          {"imperfection_eps", d.imperfection_eps}};
}

nlohmann::json analyzer_to_json(const AnalyzerConfig& a) {
  return {{"choice", a.choice == BasisChoice::Active ? "Active" : "Passive"},
          {"party_rotation_deg", a.party_rotation_deg},
          {"parallel_is_one",
           {a.outcome_labels.parallel_is_one[0], a.outcome_labels.parallel_is_one[1]}},
          {"block_length", a.block_length}};
}

void check_range(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Genuine: return "Genuine";
    case Scenario::InterceptResend: return "InterceptResend";
    case Scenario::TwinFsgPassive: return "TwinFsgPassive";
    case Scenario::TwinFsgActive: return "TwinFsgActive";
  }
  return "?";
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "Genuine") return Scenario::Genuine;
  if (name == "InterceptResend") return Scenario::InterceptResend;
  if (name == "TwinFsgPassive") return Scenario::TwinFsgPassive;
  if (name == "TwinFsgActive") return Scenario::TwinFsgActive;
  throw ConfigError("unknown scenario \"" + name + "\"");
}

bool is_fsg_scenario(Scenario s) {
  return s == Scenario::TwinFsgPassive || s == Scenario::TwinFsgActive;
}

RunConfig default_config(Scenario scenario) {
  RunConfig cfg;
  cfg.scenario = scenario;
  cfg.alice.analyzer.party_rotation_deg = 0.0;
  cfg.bob.analyzer.party_rotation_deg = kTildeRotationDeg;

  switch (scenario) {
    case Scenario::Genuine:
      cfg.n_pairs = 1000000;
      cfg.source.visibility = 1.0;
      // receiver basis-1 ports swapped: the genuine-source calibration
      cfg.bob.analyzer.outcome_labels.parallel_is_one = {true, false};
      break;
    case Scenario::InterceptResend:
      cfg.n_pairs = 1000000;
      cfg.source.visibility = 0.8418;
      cfg.bob.analyzer.outcome_labels.parallel_is_one = {true, false};
      cfg.eve.enabled = true;
      break;
    case Scenario::TwinFsgPassive:
      cfg.n_pairs = 700000;
      cfg.fsg_q = 1.0 / std::sqrt(2.0);
      break;
    case Scenario::TwinFsgActive:
      cfg.n_pairs = 2000000;
      cfg.fsg_q = 0.699275;
      cfg.alice.analyzer.choice = BasisChoice::Active;
      cfg.bob.analyzer.choice = BasisChoice::Active;
      cfg.alice.detector.click_threshold = 0.7;
      cfg.bob.detector.click_threshold = 0.7;
      break;
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  check_range(cfg.n_pairs >= 1, "n_pairs must be >= 1");
  check_range(cfg.window_ns >= 0, "window_ns must be >= 0");
  check_range(cfg.source.visibility >= 0.0 && cfg.source.visibility <= 1.0,
              "source.visibility must lie in [0, 1]");
  check_range(cfg.source.pair_rate > 0.0, "source.pair_rate_hz must be positive");
  check_range(cfg.faked_state.trigger_power > 0.0, "faked_state.trigger_power must be positive");
  check_range(cfg.faked_state.blinding_power_per_channel >= 0.0,
              "faked_state.blinding_power_per_channel must be >= 0");
  check_range(cfg.eve.eta >= 0.0 && cfg.eve.eta <= 1.0, "eve.eta must lie in [0, 1]");

  const std::array<const PartyConfig*, 2> parties{&cfg.alice, &cfg.bob};
  const std::array<const char*, 2> names{"alice", "bob"};
  for (std::size_t p = 0; p < 2; ++p) {
    const DetectorParams& d = parties[p]->detector;
    const std::string who = names[p];
    check_range(d.eta >= 0.0 && d.eta <= 1.0, who + ".eta must lie in [0, 1]");
    check_range(d.dark_rate >= 0.0, who + ".dark_rate_hz must be >= 0");
    check_range(d.click_threshold > 0.0, who + ".click_threshold must be positive");
    check_range(d.blind_threshold > 0.0, who + ".blind_threshold must be positive");
    check_range(d.imperfection_eps >= 0.0 && d.imperfection_eps <= 1.0,
                who + ".imperfection_eps must lie in [0, 1]");
    check_range(parties[p]->analyzer.block_length >= 1,
                who + ".block_length must be >= 1");
    const bool want_active = cfg.scenario == Scenario::TwinFsgActive;
    if ((parties[p]->analyzer.choice == BasisChoice::Active) != want_active) {
      throw ConfigError(who + ": analyzer choice does not match scenario " +
                        to_string(cfg.scenario));
    }
  }

  if (cfg.eve.enabled && cfg.scenario != Scenario::InterceptResend) {
    throw ConfigError("eve.enabled requires the InterceptResend scenario");
  }
  if (is_fsg_scenario(cfg.scenario)) {
    fsg_program_from_config(cfg);  // validates q / matrix
  }
  for (const double q : cfg.q_sweep) {
    check_range(q >= -1.0 && q <= 1.0, "q_sweep entries must lie in [-1, 1]");
  }
}

FsgProgram fsg_program_from_config(const RunConfig& cfg) {
  try {
    if (cfg.fsg_matrix) return FsgProgram::from_matrix(*cfg.fsg_matrix);
    if (cfg.fsg_q) return FsgProgram::from_q(*cfg.fsg_q);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("fsg: ") + e.what());
  }
  throw ConfigError("fsg section with q or matrix is required for FSG scenarios");
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  require_keys(j,
               {"schema_version", "scenario", "seed", "n_pairs", "window_ns", "source",
                "fsg", "faked_state", "eve", "detectors", "analyzers", "monitor",
                "q_sweep"},
               "config");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1) {
    throw ConfigError("config requires \"schema_version\": 1");
  }
  if (!j.contains("scenario")) throw ConfigError("config requires \"scenario\"");

  RunConfig cfg = default_config(scenario_from_string(j["scenario"].get<std::string>()));

  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("n_pairs")) cfg.n_pairs = j["n_pairs"].get<std::int64_t>();
  if (j.contains("window_ns")) cfg.window_ns = j["window_ns"].get<std::int64_t>();

  if (j.contains("source")) {
    const auto& s = j["source"];
    require_keys(s, {"visibility", "pair_rate_hz"}, "source");
    cfg.source.visibility = get_number(s, "visibility", cfg.source.visibility);
    cfg.source.pair_rate = get_number(s, "pair_rate_hz", cfg.source.pair_rate);
  }
  if (j.contains("fsg")) {
    const auto& f = j["fsg"];
    require_keys(f, {"q", "matrix"}, "fsg");
    if (f.contains("q") && f.contains("matrix")) {
      throw ConfigError("fsg: give either q or matrix, not both");
    }
    if (f.contains("q")) {
      cfg.fsg_q = f["q"].get<double>();
      cfg.fsg_matrix.reset();
    }
    if (f.contains("matrix")) {
      const auto& m = f["matrix"];
      if (!m.is_array() || m.size() != 16) {
        throw ConfigError("fsg.matrix must be an array of 16 numbers (row-major 4x4)");
      }
      std::array<double, 16> p{};
      for (std::size_t i = 0; i < 16; ++i) p[i] = m[i].get<double>();
      cfg.fsg_matrix = p;
      cfg.fsg_q.reset();
    }
  }
  if (j.contains("faked_state")) {
    const auto& f = j["faked_state"];
    require_keys(f, {"trigger_power", "blinding_power_per_channel"}, "faked_state");
    cfg.faked_state.trigger_power =
        get_number(f, "trigger_power", cfg.faked_state.trigger_power);
    cfg.faked_state.blinding_power_per_channel = get_number(
        f, "blinding_power_per_channel", cfg.faked_state.blinding_power_per_channel);
  }
  if (j.contains("eve")) {
    const auto& e = j["eve"];
    require_keys(e, {"enabled", "eta"}, "eve");
    if (e.contains("enabled")) cfg.eve.enabled = e["enabled"].get<bool>();
    cfg.eve.eta = get_number(e, "eta", cfg.eve.eta);
  }
  if (j.contains("detectors")) {
    const auto& d = j["detectors"];
    require_keys(d, {"alice", "bob"}, "detectors");
    if (d.contains("alice")) {
      cfg.alice.detector =
          detector_from_json(d["alice"], cfg.alice.detector, "detectors.alice");
    }
    if (d.contains("bob")) {
      cfg.bob.detector = detector_from_json(d["bob"], cfg.bob.detector, "detectors.bob");
    }
  }
  if (j.contains("analyzers")) {
    const auto& a = j["analyzers"];
    require_keys(a, {"alice", "bob"}, "analyzers");
    if (a.contains("alice")) {
      cfg.alice.analyzer =
          analyzer_from_json(a["alice"], cfg.alice.analyzer, "analyzers.alice");
    }
    if (a.contains("bob")) {
      cfg.bob.analyzer = analyzer_from_json(a["bob"], cfg.bob.analyzer, "analyzers.bob");
    }
  }
  if (j.contains("monitor")) {
    const auto& m = j["monitor"];
    require_keys(m, {"alarm_threshold"}, "monitor");
    cfg.monitor.alarm_threshold =
        get_number(m, "alarm_threshold", cfg.monitor.alarm_threshold);
  }
  if (j.contains("q_sweep")) {
    const auto& q = j["q_sweep"];
    if (!q.is_array()) throw ConfigError("q_sweep must be an array of numbers");
    cfg.q_sweep.clear();
    for (const auto& v : q) cfg.q_sweep.push_back(v.get<double>());
  }
  return cfg;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json j{
      {"schema_version", 1},
      {"scenario", to_string(cfg.scenario)},
      {"seed", cfg.seed},
      {"n_pairs", cfg.n_pairs},
      {"window_ns", cfg.window_ns},
      {"source",
       {{"visibility", cfg.source.visibility}, {"pair_rate_hz", cfg.source.pair_rate}}},
      {"faked_state",
       {{"trigger_power", cfg.faked_state.trigger_power},
        {"blinding_power_per_channel", cfg.faked_state.blinding_power_per_channel}}},
      {"eve", {{"enabled", cfg.eve.enabled}, {"eta", cfg.eve.eta}}},
      {"detectors",
       {{"alice", detector_to_json(cfg.alice.detector)},
        {"bob", detector_to_json(cfg.bob.detector)}}},
      {"analyzers",
       {{"alice", analyzer_to_json(cfg.alice.analyzer)},
        {"bob", analyzer_to_json(cfg.bob.analyzer)}}},
      {"monitor", {{"alarm_threshold", cfg.monitor.alarm_threshold}}},
  };
  if (cfg.fsg_matrix) {
    j["fsg"] = {{"matrix", *cfg.fsg_matrix}};
  } else if (cfg.fsg_q) {
    j["fsg"] = {{"q", *cfg.fsg_q}};
  }
  if (!cfg.q_sweep.empty()) j["q_sweep"] = cfg.q_sweep;
  return j;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  RunConfig cfg = config_from_json(j);
  validate(cfg);
  return cfg;
}

}  // namespace bellsim
