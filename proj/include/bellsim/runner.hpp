#ifndef BELLSIM_RUNNER_HPP
#define BELLSIM_RUNNER_HPP

#include <vector>

#include "bellsim/config.hpp"
#include "bellsim/report.hpp"

namespace bellsim {

// Execute one scenario end to end: emission times, per-pair generation
// (genuine outcomes or programmed faked pairs, with Eve interposed when
// enabled), analyzer/detector response, coincidence matching, tallying and
// the CHSH statistic. Deterministic for a fixed config.
// When non-null, alice_events / bob_events receive the full event streams.
RunReport run(const RunConfig& config, EventStream* alice_events = nullptr,
              EventStream* bob_events = nullptr);

// One run per q value (config.q_sweep, or the default grid below when the
// list is empty), each seeded from (config.seed, point index).
SweepReport sweep(const RunConfig& config);

// Nine q values spanning the region where 7e5-event runs keep dS in a few
// parts in 10^3; the endpoints stay clear of |q| = 1 where dS collapses.
std::vector<double> default_sweep_grid();

// Offline path: the same pipeline from coincidence matching onward.
RunReport analyze(const EventStream& alice, const EventStream& bob,
                  std::int64_t window_ns);

}  // namespace bellsim

#endif
