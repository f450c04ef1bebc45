#include "bellsim/eve.hpp"

namespace bellsim {

InterceptResult intercept_resend_in_basis(double visibility, double alice_angle_deg,
                                          int eve_basis, const OutcomeLabels& labels,
                                          double trigger_power,
                                          double blinding_power_per_channel,
                                          std::int64_t time_ns, RandomStream& rng) {
  const double eve_angle = kTildeRotationDeg + 45.0 * eve_basis;
  const BornOutcome joint = born_sample(visibility, alice_angle_deg, eve_angle, rng);
  const bool parallel = joint.b > 0;

  InterceptRecord record;
  record.eve_basis = eve_basis;
  record.eve_outcome = labels.bit(eve_basis, parallel);
  record.resent.trigger =
      PulsePolarization::linear(parallel ? eve_angle : eve_angle + 90.0);
  record.resent.trigger_power = trigger_power;
  record.resent.blinding_power_per_channel = blinding_power_per_channel;
  record.time_ns = time_ns;
  return {joint.a, record};
}

InterceptResult intercept_resend(double visibility, double alice_angle_deg,
                                 const OutcomeLabels& labels, double trigger_power,
                                 double blinding_power_per_channel,
                                 std::int64_t time_ns, RandomStream& rng) {
  const int basis = rng.coin();
  return intercept_resend_in_basis(visibility, alice_angle_deg, basis, labels,
                                   trigger_power, blinding_power_per_channel, time_ns,
                                   rng);
}

}  // namespace bellsim
