#ifndef BELLSIM_EVE_HPP
#define BELLSIM_EVE_HPP

#include <cstdint>

#include "bellsim/detectors.hpp"
#include "bellsim/sources.hpp"

namespace bellsim {

// One intercepted pair: Eve's measurement and the faked state she resends.
struct InterceptRecord {
  int eve_basis = 0;    // 0 -> 22.5 deg analyzer, 1 -> 67.5 deg
  int eve_outcome = 0;  // bit reported by her apparatus (receiver-side labels)
  FakedState resent;
  std::int64_t time_ns = 0;
};

struct InterceptResult {
  int alice_outcome = 0;  // +1 / -1 at the remote party's analyzer
  InterceptRecord record;
};

// Measure the receiver-bound photon in a fixed basis and build the faked
// state that copies the result into the receiver: the trigger beam is
// polarized along the port that fired (the analyzer angle itself for the
// parallel port, +90 degrees for the perpendicular one).
InterceptResult intercept_resend_in_basis(double visibility, double alice_angle_deg,
                                          int eve_basis, const OutcomeLabels& labels,
                                          double trigger_power,
                                          double blinding_power_per_channel,
                                          std::int64_t time_ns, RandomStream& rng);

// Full intercept-resend step: Eve's basis is an unbiased draw between the
// receiver's two analyzers.
InterceptResult intercept_resend(double visibility, double alice_angle_deg,
                                 const OutcomeLabels& labels, double trigger_power,
                                 double blinding_power_per_channel,
                                 std::int64_t time_ns, RandomStream& rng);

}  // namespace bellsim

#endif
