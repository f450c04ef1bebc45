#ifndef BELLSIM_OPTICS_HPP
#define BELLSIM_OPTICS_HPP

#include <array>

namespace bellsim {

// Polarization of a bright pulse. Linear polarizations live on the
// half-turn circle (angles in degrees, mod 180); the circular state carries
// no angle and splits evenly at every analyzer.
enum class PolKind { Linear, Circular };

struct PulsePolarization {
  PolKind kind = PolKind::Linear;
  double angle_deg = 0.0;  // in [0, 180) for Linear, unused for Circular

  static PulsePolarization linear(double angle_deg);
  static PulsePolarization circular();
};

// Reduce an angle to [0, 180).
double normalize_angle_deg(double angle_deg);

// Per-channel optical power, arbitrary units. Channel layout:
//   passive (4): {basis0 parallel, basis0 perpendicular,
//                 basis1 parallel, basis1 perpendicular}
//   active  (2): {parallel, perpendicular} of the selected analysis angle
struct PowerMap {
  std::array<double, 4> power{};
  int channels = 0;

  double total() const {
    double t = 0.0;
    for (int c = 0; c < channels; ++c) t += power[c];
    return t;
  }
};

struct Fractions {
  double parallel = 0.0;
  double perpendicular = 0.0;
};

// Fraction of pulse power leaving the parallel / perpendicular port of a
// polarizing analyzer set to `analyzer_angle_deg`. Linear pulses follow
// Malus routing cos^2 / sin^2 of the angle difference; circular pulses split
// evenly. The two fractions always sum to exactly 1.
Fractions analyzer_fractions(const PulsePolarization& pol, double analyzer_angle_deg);

// Power map of a pulse through a passive analyzer: a 50/50 beamsplitter
// followed by one polarizing analyzer per arm, at party_rotation_deg and
// party_rotation_deg + 45.
PowerMap passive_power_map(const PulsePolarization& pol, double input_power,
                           double party_rotation_deg);

// Power map through an active analyzer: the half-wave plate routes the full
// pulse into a single analyzer at analysis_angle_deg.
PowerMap active_power_map(const PulsePolarization& pol, double input_power,
                          double analysis_angle_deg);

// Constant per-channel map (the circular blinding beam).
PowerMap flat_power_map(double power_per_channel, int channels);

}  // namespace bellsim

#endif
