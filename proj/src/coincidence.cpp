#include "bellsim/coincidence.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bellsim {

namespace {

void require_sorted(const EventStream& stream, const char* name) {
  for (std::size_t i = 1; i < stream.size(); ++i) {
    if (stream[i].time_ns < stream[i - 1].time_ns) {
      throw std::invalid_argument(std::string("match: stream ") + name +
                                  " is not sorted by time");
    }
  }
}

}  // namespace

MatchResult match(const EventStream& stream_a, const EventStream& stream_b,
                  std::int64_t window_ns) {
  if (window_ns < 0) throw std::invalid_argument("match: window must be >= 0");
  require_sorted(stream_a, "a");
  require_sorted(stream_b, "b");

  MatchResult result;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < stream_a.size() && j < stream_b.size()) {
    const std::int64_t ta = stream_a[i].time_ns;
    const std::int64_t tb = stream_b[j].time_ns;
    if (std::llabs(ta - tb) <= window_ns) {
      result.pairs.push_back({stream_a[i], stream_b[j]});
      ++i;
      ++j;
    } else if (ta < tb) {
      ++result.unmatched_a;
      ++i;
    } else {
      ++result.unmatched_b;
      ++j;
    }
  }
  result.unmatched_a += stream_a.size() - i;
  result.unmatched_b += stream_b.size() - j;
  return result;
}

Efficiency efficiency(std::size_t pairs_count, std::size_t total_a, std::size_t total_b) {
  if (pairs_count > total_a || pairs_count > total_b) {
    throw std::invalid_argument("efficiency: pair count exceeds a side's total");
  }
  Efficiency eff;
  eff.alice = total_a == 0 ? 0.0
                           : static_cast<double>(pairs_count) / static_cast<double>(total_a);
  eff.bob = total_b == 0 ? 0.0
                         : static_cast<double>(pairs_count) / static_cast<double>(total_b);
  return eff;
}

std::int64_t CoincidenceTally::total() const {
  std::int64_t t = 0;
  for (const std::int64_t c : counts) t += c;
  return t;
}

int detected_combo(const MatchedPair& pair) {
  const int det_a = pair.a.basis * 2 + pair.a.outcome;
  const int det_b = pair.b.basis * 2 + pair.b.outcome;
  return det_a * 4 + det_b;
}

CoincidenceTally tally(const std::vector<MatchedPair>& pairs,
                       std::span<const int> sent_labels) {
  const bool with_sent = !sent_labels.empty();
  if (with_sent && sent_labels.size() != pairs.size()) {
    throw std::invalid_argument("tally: sent labels misaligned with pairs");
  }
  CoincidenceTally t;
  t.has_sent_matrix = with_sent;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const MatchedPair& pair = pairs[k];
    ++t.counts[CoincidenceTally::counts_index(pair.a.basis, pair.b.basis,
                                              pair.a.outcome, pair.b.outcome)];
    if (with_sent) {
      const int sent = sent_labels[k];
      if (sent < 0 || sent >= 16) {
        throw std::invalid_argument("tally: sent label out of range");
      }
      ++t.sent_vs_detected[static_cast<std::size_t>(sent * 16 + detected_combo(pair))];
    }
  }
  return t;
}

}  // namespace bellsim
