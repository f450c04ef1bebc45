#include "bellsim/detectors.hpp"

#include <algorithm>
#include <stdexcept>

namespace bellsim {

FakedPowerMaps faked_power_map(const FakedState& fs, const AnalyzerConfig& analyzer,
                               std::optional<double> active_angle_deg) {
  if (fs.trigger.kind != PolKind::Linear) {
    throw std::invalid_argument("faked_power_map: trigger beam must be linearly polarized");
  }
  if (analyzer.choice == BasisChoice::Active) {
    if (!active_angle_deg) {
      throw std::invalid_argument("faked_power_map: active analyzer requires a plate angle");
    }
    return {active_power_map(fs.trigger, fs.trigger_power, *active_angle_deg),
            flat_power_map(fs.blinding_power_per_channel, 2)};
  }
  if (active_angle_deg) {
    throw std::invalid_argument("faked_power_map: passive analyzer takes no plate angle");
  }
  return {passive_power_map(fs.trigger, fs.trigger_power, analyzer.party_rotation_deg),
          flat_power_map(fs.blinding_power_per_channel, 4)};
}

std::vector<int> threshold_clicks(const PowerMap& trigger, const PowerMap& blinding,
                                  const DetectorParams& params) {
  if (trigger.channels != blinding.channels) {
    throw std::invalid_argument("faked response: trigger/blinding channel counts differ");
  }
  std::vector<int> clicks;
  for (int c = 0; c < trigger.channels; ++c) {
    if (blinding.power[c] >= params.blind_threshold &&
        trigger.power[c] >= params.click_threshold) {
      clicks.push_back(c);
    }
  }
  return clicks;
}

void add_imperfection_click(std::vector<int>& clicks, int channel_count,
                            RandomStream& rng) {
  std::array<int, 4> open{};
  int n_open = 0;
  for (int c = 0; c < channel_count; ++c) {
    if (std::find(clicks.begin(), clicks.end(), c) == clicks.end()) {
      open[n_open++] = c;
    }
  }
  if (n_open == 0) return;
  clicks.push_back(open[rng.uniform_int(static_cast<std::uint64_t>(n_open))]);
}

std::vector<int> respond_faked(const PowerMap& trigger, const PowerMap& blinding,
                               const DetectorParams& params, RandomStream& rng) {
  std::vector<int> clicks = threshold_clicks(trigger, blinding, params);
  if (params.imperfection_eps > 0.0 && rng.bernoulli(params.imperfection_eps)) {
    add_imperfection_click(clicks, trigger.channels, rng);
  }
  return clicks;
}

std::optional<Click> respond_genuine(int outcome_pm1, int basis,
                                     const DetectorParams& params,
                                     const OutcomeLabels& labels, RandomStream& rng) {
  if (params.eta <= 0.0) return std::nullopt;
  if (params.eta < 1.0 && !rng.bernoulli(params.eta)) return std::nullopt;
  const bool parallel = outcome_pm1 > 0;
  return Click{basis, labels.bit(basis, parallel)};
}

std::vector<DetectionEvent> dark_counts(const DetectorParams& params,
                                        std::int64_t duration_ns, Party party,
                                        RandomStream& rng) {
  std::vector<DetectionEvent> events;
  if (params.dark_rate <= 0.0 || duration_ns <= 0) return events;
  double t_s = 0.0;
  const double duration_s = static_cast<double>(duration_ns) * 1e-9;
  for (;;) {
    t_s += rng.exponential(params.dark_rate);
    if (t_s >= duration_s) break;
    DetectionEvent ev;
    ev.time_ns = std::llround(t_s * 1e9);
    ev.party = party;
    ev.basis = static_cast<std::uint8_t>(rng.coin());
    ev.outcome = static_cast<std::uint8_t>(rng.coin());
    events.push_back(ev);
  }
  return events;
}

BasisSchedule active_basis_sequence(RandomStream& rng, std::size_t n_blocks,
                                    int block_length) {
  if (block_length < 1) throw std::invalid_argument("active_basis_sequence: block_length >= 1");
  BasisSchedule schedule;
  schedule.block_length = block_length;
  schedule.block_setting.resize(n_blocks);
  for (std::size_t i = 0; i < n_blocks; ++i) {
    schedule.block_setting[i] = static_cast<std::uint8_t>(rng.coin());
  }
  return schedule;
}

bool power_monitor(std::span<const PowerMap> blinding_maps, double alarm_threshold) {
  if (blinding_maps.empty()) return false;
  double sum = 0.0;
  for (const PowerMap& map : blinding_maps) sum += map.total();
  const double mean = sum / static_cast<double>(blinding_maps.size());
  return mean > alarm_threshold;
}

}  // namespace bellsim
