#include "bellsim/runner.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>

#include "bellsim/errors.hpp"
#include "bellsim/eve.hpp"

namespace bellsim {

namespace {

struct GeneratedStreams {
  EventStream alice;
  EventStream bob;
  std::vector<std::uint8_t> sent;  // per emission, FSG scenarios only
  PowerMap blinding_alice;
  PowerMap blinding_bob;
};

DetectionEvent make_event(std::int64_t t, Party party, int basis, int outcome) {
  return {t, party, static_cast<std::uint8_t>(basis), static_cast<std::uint8_t>(outcome)};
}

void merge_dark_counts(EventStream& stream, std::vector<DetectionEvent>&& darks) {
  if (darks.empty()) return;
  EventStream merged;
  merged.reserve(stream.size() + darks.size());
  std::merge(stream.begin(), stream.end(), darks.begin(), darks.end(),
             std::back_inserter(merged),
             [](const DetectionEvent& a, const DetectionEvent& b) {
               return a.time_ns < b.time_ns;
             });
  stream = std::move(merged);
}

void generate_genuine(const RunConfig& cfg, const std::vector<std::int64_t>& times,
                      RandomStream& rng, GeneratedStreams& out) {
  const bool eve_on = cfg.scenario == Scenario::InterceptResend && cfg.eve.enabled;
  const double visibility = cfg.source.visibility;
  const OutcomeLabels& labels_a = cfg.alice.analyzer.outcome_labels;
  const OutcomeLabels& labels_b = cfg.bob.analyzer.outcome_labels;

  for (const std::int64_t t : times) {
    const int basis_a = rng.coin();
    const double angle_a = cfg.alice.analyzer.party_rotation_deg + 45.0 * basis_a;

    if (eve_on) {
      const InterceptResult res = intercept_resend(
          visibility, angle_a, labels_b, cfg.faked_state.trigger_power,
          cfg.faked_state.blinding_power_per_channel, t, rng);
      if (const auto click =
              respond_genuine(res.alice_outcome, basis_a, cfg.alice.detector, labels_a, rng)) {
        out.alice.push_back(make_event(t, Party::Alice, click->basis, click->outcome));
      }
      if (cfg.eve.eta < 1.0 && !rng.bernoulli(cfg.eve.eta)) continue;  // Eve missed it
      const FakedPowerMaps maps =
          faked_power_map(res.record.resent, cfg.bob.analyzer, std::nullopt);
      for (const int ch : respond_faked(maps.trigger, maps.blinding, cfg.bob.detector, rng)) {
        out.bob.push_back(
            make_event(t, Party::Bob, ch / 2, labels_b.bit(ch / 2, ch % 2 == 0)));
      }
    } else {
      const int basis_b = rng.coin();
      const double angle_b = cfg.bob.analyzer.party_rotation_deg + 45.0 * basis_b;
      const BornOutcome joint = born_sample(visibility, angle_a, angle_b, rng);
      if (const auto click =
              respond_genuine(joint.a, basis_a, cfg.alice.detector, labels_a, rng)) {
        out.alice.push_back(make_event(t, Party::Alice, click->basis, click->outcome));
      }
      if (const auto click =
              respond_genuine(joint.b, basis_b, cfg.bob.detector, labels_b, rng)) {
        out.bob.push_back(make_event(t, Party::Bob, click->basis, click->outcome));
      }
    }
  }

  out.blinding_alice = flat_power_map(0.0, 4);
  out.blinding_bob =
      eve_on ? flat_power_map(cfg.faked_state.blinding_power_per_channel, 4)
             : flat_power_map(0.0, 4);
}

void generate_twin_fsg(const RunConfig& cfg, const std::vector<std::int64_t>& times,
                       RandomStream& rng, GeneratedStreams& out) {
  const FsgProgram program = fsg_program_from_config(cfg);
  const bool active = cfg.scenario == Scenario::TwinFsgActive;
  const OutcomeLabels& labels_a = cfg.alice.analyzer.outcome_labels;
  const OutcomeLabels& labels_b = cfg.bob.analyzer.outcome_labels;
  const double eps_a = cfg.alice.detector.imperfection_eps;
  const double eps_b = cfg.bob.detector.imperfection_eps;

  BasisSchedule schedule_a;
  BasisSchedule schedule_b;
  if (active) {
    const auto blocks = [&](int block_length) {
      return (times.size() + static_cast<std::size_t>(block_length) - 1) /
             static_cast<std::size_t>(block_length);
    };
    schedule_a = active_basis_sequence(rng, blocks(cfg.alice.analyzer.block_length),
                                       cfg.alice.analyzer.block_length);
    schedule_b = active_basis_sequence(rng, blocks(cfg.bob.analyzer.block_length),
                                       cfg.bob.analyzer.block_length);
  }

  out.sent.resize(times.size());
  const int channels = active ? 2 : 4;

  for (std::size_t k = 0; k < times.size(); ++k) {
    const std::int64_t t = times[k];
    const SampledPair pair = sample_faked_pair(program, rng);
    out.sent[k] = static_cast<std::uint8_t>(pair.sender_pol * 4 + pair.receiver_pol);

    const FakedState fs_a{sender_polarization(pair.sender_pol),
                          cfg.faked_state.trigger_power,
                          cfg.faked_state.blinding_power_per_channel};
    const FakedState fs_b{receiver_polarization(pair.receiver_pol),
                          cfg.faked_state.trigger_power,
                          cfg.faked_state.blinding_power_per_channel};

    int setting_a = 0;
    int setting_b = 0;
    FakedPowerMaps maps_a;
    FakedPowerMaps maps_b;
    if (active) {
      setting_a = schedule_a.setting(k);
      setting_b = schedule_b.setting(k);
      maps_a = faked_power_map(fs_a, cfg.alice.analyzer,
                               cfg.alice.analyzer.party_rotation_deg + 45.0 * setting_a);
      maps_b = faked_power_map(fs_b, cfg.bob.analyzer,
                               cfg.bob.analyzer.party_rotation_deg + 45.0 * setting_b);
    } else {
      maps_a = faked_power_map(fs_a, cfg.alice.analyzer, std::nullopt);
      maps_b = faked_power_map(fs_b, cfg.bob.analyzer, std::nullopt);
    }

    std::vector<int> clicks_a =
        threshold_clicks(maps_a.trigger, maps_a.blinding, cfg.alice.detector);
    std::vector<int> clicks_b =
        threshold_clicks(maps_b.trigger, maps_b.blinding, cfg.bob.detector);
    // imperfection_eps is the per-pair probability of one wrong detector
    // firing somewhere, so each side carries half of it
    if (eps_a > 0.0 && rng.bernoulli(0.5 * eps_a)) {
      add_imperfection_click(clicks_a, channels, rng);
    }
    if (eps_b > 0.0 && rng.bernoulli(0.5 * eps_b)) {
      add_imperfection_click(clicks_b, channels, rng);
    }

    for (const int ch : clicks_a) {
      const int basis = active ? setting_a : ch / 2;
      const bool parallel = active ? ch == 0 : ch % 2 == 0;
      out.alice.push_back(make_event(t, Party::Alice, basis, labels_a.bit(basis, parallel)));
    }
    for (const int ch : clicks_b) {
      const int basis = active ? setting_b : ch / 2;
      const bool parallel = active ? ch == 0 : ch % 2 == 0;
      out.bob.push_back(make_event(t, Party::Bob, basis, labels_b.bit(basis, parallel)));
    }
  }

  out.blinding_alice = flat_power_map(cfg.faked_state.blinding_power_per_channel, channels);
  out.blinding_bob = flat_power_map(cfg.faked_state.blinding_power_per_channel, channels);
}

// Index of an emission timestamp in the (strictly increasing) times list.
std::size_t emission_index(const std::vector<std::int64_t>& times, std::int64_t t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  assert(it != times.end() && *it == t);
  return static_cast<std::size_t>(it - times.begin());
}

}  // namespace

std::vector<double> default_sweep_grid() {
  std::vector<double> grid(9);
  for (int i = 0; i < 9; ++i) grid[static_cast<std::size_t>(i)] = -0.7 + 0.175 * i;
  return grid;
}

RunReport run(const RunConfig& cfg, EventStream* alice_events, EventStream* bob_events) {
  validate(cfg);
  RandomStream rng(cfg.seed);

  const std::vector<std::int64_t> times =
      emission_times(cfg.source.pair_rate, static_cast<std::size_t>(cfg.n_pairs), rng);

  GeneratedStreams streams;
  if (is_fsg_scenario(cfg.scenario)) {
    generate_twin_fsg(cfg, times, rng, streams);
  } else {
    generate_genuine(cfg, times, rng, streams);
  }

  const std::int64_t duration = times.empty() ? 0 : times.back();
  merge_dark_counts(streams.alice,
                    dark_counts(cfg.alice.detector, duration, Party::Alice, rng));
  merge_dark_counts(streams.bob, dark_counts(cfg.bob.detector, duration, Party::Bob, rng));

  const MatchResult matched = match(streams.alice, streams.bob, cfg.window_ns);

  // The programmed-vs-detected table needs every matched event to sit on an
  // emission timestamp, which dark counts would break.
  std::vector<int> sent_labels;
  if (!streams.sent.empty() && cfg.alice.detector.dark_rate == 0.0 &&
      cfg.bob.detector.dark_rate == 0.0) {
    sent_labels.reserve(matched.pairs.size());
    for (const MatchedPair& pair : matched.pairs) {
      sent_labels.push_back(streams.sent[emission_index(times, pair.a.time_ns)]);
    }
  }

  CoincidenceTally counts = tally(matched.pairs, sent_labels);
  counts.unmatched_a = static_cast<std::int64_t>(matched.unmatched_a);
  counts.unmatched_b = static_cast<std::int64_t>(matched.unmatched_b);

  ChshResult chsh_result = chsh_from_tally(counts);
  chsh_result.efficiency =
      efficiency(matched.pairs.size(), streams.alice.size(), streams.bob.size());

  const std::array<PowerMap, 1> maps_a{streams.blinding_alice};
  const std::array<PowerMap, 1> maps_b{streams.blinding_bob};
  const bool alarm = power_monitor(maps_a, cfg.monitor.alarm_threshold) ||
                     power_monitor(maps_b, cfg.monitor.alarm_threshold);

  RunReport report;
  report.scenario = to_string(cfg.scenario);
  report.seed = cfg.seed;
  report.n_pairs = cfg.n_pairs;
  report.window_ns = cfg.window_ns;
  report.chsh = chsh_result;
  report.matched_pairs = static_cast<std::int64_t>(matched.pairs.size());
  report.total_alice = static_cast<std::int64_t>(streams.alice.size());
  report.total_bob = static_cast<std::int64_t>(streams.bob.size());
  report.tally = counts;
  report.monitor_alarm = alarm;
  report.alarm_threshold = cfg.monitor.alarm_threshold;
  report.avg_power_alice = streams.blinding_alice.total();
  report.avg_power_bob = streams.blinding_bob.total();

  if (alice_events) *alice_events = std::move(streams.alice);
  if (bob_events) *bob_events = std::move(streams.bob);
  return report;
}

SweepReport sweep(const RunConfig& cfg) {
  if (!is_fsg_scenario(cfg.scenario)) {
    throw ConfigError("sweep requires a TwinFsg scenario");
  }
  validate(cfg);
  const std::vector<double> grid = cfg.q_sweep.empty() ? default_sweep_grid() : cfg.q_sweep;

  SweepReport report;
  report.scenario = to_string(cfg.scenario);
  report.seed = cfg.seed;
  report.n_pairs = cfg.n_pairs;
  report.points.reserve(grid.size());

  for (std::size_t i = 0; i < grid.size(); ++i) {
    RunConfig point_cfg = cfg;
    point_cfg.fsg_matrix.reset();
    point_cfg.fsg_q = grid[i];
    point_cfg.seed = RandomStream::derive(cfg.seed, i);
    point_cfg.q_sweep.clear();
    const RunReport point = run(point_cfg);
    report.points.push_back({grid[i], expected_S(FsgProgram::from_q(grid[i])),
                             point.chsh.S, point.chsh.dS});
  }
  return report;
}

RunReport analyze(const EventStream& alice, const EventStream& bob,
                  std::int64_t window_ns) {
  MatchResult matched;
  try {
    matched = match(alice, bob, window_ns);
  } catch (const std::invalid_argument& e) {
    throw AnalysisError(e.what());
  }

  CoincidenceTally counts = tally(matched.pairs);
  counts.unmatched_a = static_cast<std::int64_t>(matched.unmatched_a);
  counts.unmatched_b = static_cast<std::int64_t>(matched.unmatched_b);

  ChshResult chsh_result = chsh_from_tally(counts);
  chsh_result.efficiency = efficiency(matched.pairs.size(), alice.size(), bob.size());

  RunReport report;
  report.scenario = "Analyze";
  report.window_ns = window_ns;
  report.chsh = chsh_result;
  report.matched_pairs = static_cast<std::int64_t>(matched.pairs.size());
  report.total_alice = static_cast<std::int64_t>(alice.size());
  report.total_bob = static_cast<std::int64_t>(bob.size());
  report.tally = counts;
  return report;
}

}  // namespace bellsim
