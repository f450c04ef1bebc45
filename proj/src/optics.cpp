#include "bellsim/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace bellsim {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}

double normalize_angle_deg(double angle_deg) {
  double a = std::fmod(angle_deg, 180.0);
  if (a < 0.0) a += 180.0;
  return a;
}

PulsePolarization PulsePolarization::linear(double angle_deg) {
  return {PolKind::Linear, normalize_angle_deg(angle_deg)};
}

PulsePolarization PulsePolarization::circular() {
  return {PolKind::Circular, 0.0};
}

Fractions analyzer_fractions(const PulsePolarization& pol, double analyzer_angle_deg) {
  if (pol.kind == PolKind::Circular) return {0.5, 0.5};
  const double c = std::cos((pol.angle_deg - analyzer_angle_deg) * kDegToRad);
  const double f_par = c * c;
  return {f_par, 1.0 - f_par};
}

PowerMap passive_power_map(const PulsePolarization& pol, double input_power,
                           double party_rotation_deg) {
  const double arm_power = 0.5 * input_power;
  const Fractions f0 = analyzer_fractions(pol, party_rotation_deg);
  const Fractions f1 = analyzer_fractions(pol, party_rotation_deg + 45.0);
  PowerMap map;
  map.channels = 4;
  map.power[0] = arm_power * f0.parallel;
  map.power[1] = arm_power * f0.perpendicular;
  map.power[2] = arm_power * f1.parallel;
  map.power[3] = arm_power * f1.perpendicular;
  return map;
}

PowerMap active_power_map(const PulsePolarization& pol, double input_power,
                          double analysis_angle_deg) {
  const Fractions f = analyzer_fractions(pol, analysis_angle_deg);
  PowerMap map;
  map.channels = 2;
  map.power[0] = input_power * f.parallel;
  map.power[1] = input_power * f.perpendicular;
  return map;
}

PowerMap flat_power_map(double power_per_channel, int channels) {
  if (channels < 1 || channels > 4) throw std::invalid_argument("flat_power_map: bad channel count");
  PowerMap map;
  map.channels = channels;
  for (int c = 0; c < channels; ++c) map.power[c] = power_per_channel;
  return map;
}

}  // namespace bellsim
