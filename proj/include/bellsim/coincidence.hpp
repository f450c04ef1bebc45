#ifndef BELLSIM_COINCIDENCE_HPP
#define BELLSIM_COINCIDENCE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bellsim/detectors.hpp"

namespace bellsim {

// Time-sorted click record of one party.
using EventStream = std::vector<DetectionEvent>;

struct MatchedPair {
  DetectionEvent a;
  DetectionEvent b;
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::size_t unmatched_a = 0;
  std::size_t unmatched_b = 0;
};

// Windowed coincidence matching: greedy forward sweep over both sorted
// streams. Events at most window_ns apart pair up, each event joins at most
// one pair, and among candidates the earliest unmatched partner wins (ties
// by stream position).
MatchResult match(const EventStream& stream_a, const EventStream& stream_b,
                  std::int64_t window_ns);

// Paired detection events over total detected events, per side. 0/0 is 0.
struct Efficiency {
  double alice = 0.0;
  double bob = 0.0;
};
Efficiency efficiency(std::size_t pairs_count, std::size_t total_a, std::size_t total_b);

// Coincidence bookkeeping. `counts` is the 2x2x2x2 joint table over
// (basis_a, basis_b, outcome_a, outcome_b); `sent_vs_detected` is the 16x16
// table of programmed pulse-pair combination (sender pol * 4 + receiver pol)
// versus detected combination ((basis_a*2+outcome_a)*4 + basis_b*2+outcome_b),
// filled only when per-pair sent labels are supplied.
struct CoincidenceTally {
  std::array<std::int64_t, 16> counts{};
  bool has_sent_matrix = false;
  std::array<std::int64_t, 256> sent_vs_detected{};
  std::int64_t unmatched_a = 0;
  std::int64_t unmatched_b = 0;

  static std::size_t counts_index(int basis_a, int basis_b, int outcome_a, int outcome_b) {
    return static_cast<std::size_t>(((basis_a * 2 + basis_b) * 2 + outcome_a) * 2 +
                                    outcome_b);
  }
  std::int64_t at(int basis_a, int basis_b, int outcome_a, int outcome_b) const {
    return counts[counts_index(basis_a, basis_b, outcome_a, outcome_b)];
  }
  std::int64_t total() const;
};

// Detected-combination column of one pair in the 16x16 table.
int detected_combo(const MatchedPair& pair);

// Accumulate matched pairs; sent_labels (one entry in [0,16) per pair)
// switches on the sent-vs-detected table and must align with `pairs`.
CoincidenceTally tally(const std::vector<MatchedPair>& pairs,
                       std::span<const int> sent_labels = {});

}  // namespace bellsim

#endif
