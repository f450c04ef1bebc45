#ifndef BELLSIM_SOURCES_HPP
#define BELLSIM_SOURCES_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bellsim/optics.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

// Entangled-pair source: one effective visibility and an emission rate.
struct SourceConfig {
  double visibility = 0.8418;  // scales the correlation amplitude
  double pair_rate = 1.0e6;    // pairs per second
};

// Polarization index order used throughout: 0=H, 1=V, 2=+, 3=-.
// The receiving side's polarizations carry the same indices rotated by
// +22.5 degrees (the tilde set).
inline constexpr std::array<double, 4> kPolAnglesDeg{0.0, 90.0, 45.0, 135.0};
inline constexpr double kTildeRotationDeg = 22.5;

PulsePolarization sender_polarization(int pol_index);    // angle table above
PulsePolarization receiver_polarization(int pol_index);  // +22.5 degrees

// Basis family of a polarization index: 0 for {H,V}, 1 for {+,-}.
int pol_basis(int pol_index);
// Outcome encoded by a polarization: the first member of each family is 1.
int pol_outcome(int pol_index);

// Programmed joint-frequency table of the twin faked-state generator.
// Entries follow the fixed sign pattern
//     x y x y
//     y x y x        with x = (1+q)/16, y = (1-q)/16,
//     x y y x
//     y x x y
// rows indexed by the sender-side polarization, columns by the receiver-side
// (tilde) polarization.
class FsgProgram {
 public:
  static FsgProgram from_q(double q);
  // Accepts an explicit 4x4 row-major table, which must match the pattern
  // above for some q in [-1, 1].
  static FsgProgram from_matrix(const std::array<double, 16>& p);

  double probability(int sender_pol, int receiver_pol) const {
    return p_[sender_pol * 4 + receiver_pol];
  }
  const std::array<double, 16>& matrix() const { return p_; }
  double q() const { return q_; }

  static const std::array<int, 16>& sign_pattern();

 private:
  FsgProgram() = default;
  std::array<double, 16> p_{};
  double q_ = 0.0;
};

// CHSH value implied by a program, evaluated from the table itself through
// the four correlators (not read back from the stored q). Equals 4q.
double expected_S(const FsgProgram& program);

struct SampledPair {
  int sender_pol = 0;    // index into kPolAnglesDeg
  int receiver_pol = 0;  // index into the tilde set
};

// Draw one faked pair from the programmed table.
SampledPair sample_faked_pair(const FsgProgram& program, RandomStream& rng);

// Strictly increasing emission timestamps in integer nanoseconds: a
// homogeneous Poisson process at `rate_per_s`, quantized to >= 1 ns gaps
// (zero-length gaps are redrawn).
std::vector<std::int64_t> emission_times(double rate_per_s, std::size_t n_events,
                                         RandomStream& rng);

// Joint measurement outcome of one genuine pair analyzed at the two linear
// angles, drawn from P(a,b) = 1/4 * [1 + a*b*V*cos(2(alpha-beta))].
// Outcomes are +1 (parallel port) or -1 (perpendicular port).
struct BornOutcome {
  int a = 0;
  int b = 0;
};
BornOutcome born_sample(double visibility, double alpha_deg, double beta_deg,
                        RandomStream& rng);

// One bright two-beam pulse pair of the faked-state generator: a linear
// trigger beam plus the circular blinding background.
struct FakedState {
  PulsePolarization trigger;  // must be Linear
  double trigger_power = 1.0;
  double blinding_power_per_channel = 0.15;
};

}  // namespace bellsim

#endif
