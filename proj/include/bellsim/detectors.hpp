#ifndef BELLSIM_DETECTORS_HPP
#define BELLSIM_DETECTORS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bellsim/optics.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/sources.hpp"

namespace bellsim {

// Avalanche-photodiode abstraction. In normal (Geiger) mode the detector
// fires on a genuine photon with probability eta. Under continuous bright
// light at or above blind_threshold it loses single-photon sensitivity and
// clicks only when the trigger pulse power on its channel reaches
// click_threshold. imperfection_eps is the probability that a faked pair
// also fires one uniformly-random wrong detector.
struct DetectorParams {
  double eta = 1.0;
  double dark_rate = 0.0;  // counts per second across the party's channels
  double click_threshold = 0.35;
  double blind_threshold = 0.1;
  double imperfection_eps = 0.0;
};

enum class BasisChoice { Passive, Active };

// Which outcome bit each polarizing-analyzer port reports, per basis.
// Hardware calibration: the twin-FSG convention keeps the parallel port at
// outcome 1 in both bases; the genuine-source convention swaps the
// receiving side's basis-1 ports so the standard angle set reaches +2*sqrt(2).
struct OutcomeLabels {
  std::array<bool, 2> parallel_is_one{true, true};

  int bit(int basis, bool parallel) const {
    return parallel == parallel_is_one[static_cast<std::size_t>(basis)] ? 1 : 0;
  }
};

struct AnalyzerConfig {
  BasisChoice choice = BasisChoice::Passive;
  double party_rotation_deg = 0.0;  // 0 for the sender side, 22.5 for the receiver side
  OutcomeLabels outcome_labels;
  int block_length = 1590;  // emissions per active plate position
};

enum class Party : std::uint8_t { Alice = 0, Bob = 1, Eve = 2 };

struct DetectionEvent {
  std::int64_t time_ns = 0;
  Party party = Party::Alice;
  std::uint8_t basis = 0;
  std::uint8_t outcome = 0;
};

// Trigger and blinding components of a faked state mapped through an
// analyzer. For an active analyzer the current plate angle must be given.
struct FakedPowerMaps {
  PowerMap trigger;
  PowerMap blinding;
};
FakedPowerMaps faked_power_map(const FakedState& fs, const AnalyzerConfig& analyzer,
                               std::optional<double> active_angle_deg);

// Channels whose blinding power holds the APD blinded and whose trigger
// power reaches the click threshold. Deterministic.
std::vector<int> threshold_clicks(const PowerMap& trigger, const PowerMap& blinding,
                                  const DetectorParams& params);

// Appends one uniformly-random non-clicked channel, if any is free.
void add_imperfection_click(std::vector<int>& clicks, int channel_count,
                            RandomStream& rng);

// Blinded-mode response to a faked state: threshold clicks, plus with
// probability imperfection_eps one random wrong channel.
std::vector<int> respond_faked(const PowerMap& trigger, const PowerMap& blinding,
                               const DetectorParams& params, RandomStream& rng);

// Geiger-mode response to a genuine photon measured in `basis` with result
// `outcome_pm1` (+1 parallel / -1 perpendicular): a click with probability
// eta, reported through the analyzer's outcome labels.
struct Click {
  int basis = 0;
  int outcome = 0;
};
std::optional<Click> respond_genuine(int outcome_pm1, int basis,
                                     const DetectorParams& params,
                                     const OutcomeLabels& labels, RandomStream& rng);

// Dark counts over [0, duration_ns]: Poisson in number, uniform over time
// and channels, sorted by time.
std::vector<DetectionEvent> dark_counts(const DetectorParams& params,
                                        std::int64_t duration_ns, Party party,
                                        RandomStream& rng);

// Motor schedule for an active analyzer: one unbiased random plate position
// per block, each covering block_length consecutive emission slots.
struct BasisSchedule {
  std::vector<std::uint8_t> block_setting;
  int block_length = 1;

  int setting(std::size_t slot) const {
    return block_setting[slot / static_cast<std::size_t>(block_length)];
  }
};
BasisSchedule active_basis_sequence(RandomStream& rng, std::size_t n_blocks,
                                    int block_length);

// Countermeasure: alarm when the time-averaged total optical power entering
// the analyzer exceeds alarm_threshold.
bool power_monitor(std::span<const PowerMap> blinding_maps, double alarm_threshold);

}  // namespace bellsim

#endif
