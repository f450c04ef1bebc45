#include "bellsim/sources.hpp"

#include <cmath>
#include <stdexcept>

namespace bellsim {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

// +1 marks an x cell, -1 a y cell.
constexpr std::array<int, 16> kSignPattern{
    +1, -1, +1, -1,
    -1, +1, -1, +1,
    +1, -1, -1, +1,
    -1, +1, +1, -1,
};
}  // namespace

PulsePolarization sender_polarization(int pol_index) {
  return PulsePolarization::linear(kPolAnglesDeg[static_cast<std::size_t>(pol_index)]);
}

PulsePolarization receiver_polarization(int pol_index) {
  return PulsePolarization::linear(
      kPolAnglesDeg[static_cast<std::size_t>(pol_index)] + kTildeRotationDeg);
}

int pol_basis(int pol_index) { return pol_index < 2 ? 0 : 1; }

int pol_outcome(int pol_index) { return pol_index % 2 == 0 ? 1 : 0; }

const std::array<int, 16>& FsgProgram::sign_pattern() { return kSignPattern; }

FsgProgram FsgProgram::from_q(double q) {
  if (!(q >= -1.0 && q <= 1.0)) {
    throw std::domain_error("FsgProgram: q must lie in [-1, 1]");
  }
  const double x = (1.0 + q) / 16.0;
  const double y = (1.0 - q) / 16.0;
  FsgProgram prog;
  prog.q_ = q;
  for (int i = 0; i < 16; ++i) prog.p_[i] = kSignPattern[i] > 0 ? x : y;
  return prog;
}

FsgProgram FsgProgram::from_matrix(const std::array<double, 16>& p) {
  const double x = p[0];
  const double y = p[1];
  constexpr double kTol = 1e-9;
  for (int i = 0; i < 16; ++i) {
    const double want = kSignPattern[i] > 0 ? x : y;
    if (!(p[i] >= 0.0) || std::abs(p[i] - want) > kTol) {
      throw std::domain_error("FsgProgram: matrix does not follow the x/y pattern");
    }
  }
  if (std::abs((x + y) - 1.0 / 8.0) > kTol) {
    throw std::domain_error("FsgProgram: matrix entries must satisfy x + y = 1/8");
  }
  const double q = 8.0 * (x - y);
  if (!(q >= -1.0 - kTol && q <= 1.0 + kTol)) {
    throw std::domain_error("FsgProgram: implied q outside [-1, 1]");
  }
  FsgProgram prog;
  prog.q_ = q;
  prog.p_ = p;
  return prog;
}

double expected_S(const FsgProgram& program) {
  double S = 0.0;
  for (int basis_a = 0; basis_a < 2; ++basis_a) {
    for (int basis_b = 0; basis_b < 2; ++basis_b) {
      double num = 0.0;
      double den = 0.0;
      for (int a = 2 * basis_a; a < 2 * basis_a + 2; ++a) {
        for (int b = 2 * basis_b; b < 2 * basis_b + 2; ++b) {
          const double p = program.probability(a, b);
          const int sign = (pol_outcome(a) == pol_outcome(b)) ? +1 : -1;
          num += sign * p;
          den += p;
        }
      }
      const double corr = num / den;
      S += (basis_a == 1 && basis_b == 1) ? -corr : corr;
    }
  }
  return S;
}

SampledPair sample_faked_pair(const FsgProgram& program, RandomStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  int last_nonzero = 0;
  for (int i = 0; i < 16; ++i) {
    const double p = program.matrix()[static_cast<std::size_t>(i)];
    if (p <= 0.0) continue;
    cumulative += p;
    last_nonzero = i;
    if (u < cumulative) return {i / 4, i % 4};
  }
  // u landed in the rounding slack past the last nonzero cell
  return {last_nonzero / 4, last_nonzero % 4};
}

std::vector<std::int64_t> emission_times(double rate_per_s, std::size_t n_events,
                                         RandomStream& rng) {
  if (!(rate_per_s > 0.0)) throw std::domain_error("emission_times: rate must be positive");
  std::vector<std::int64_t> times(n_events);
  std::int64_t now = 0;
  for (std::size_t i = 0; i < n_events; ++i) {
    std::int64_t gap = 0;
    do {
      gap = std::llround(rng.exponential(rate_per_s) * 1e9);
    } while (gap < 1);
    now += gap;
    times[i] = now;
  }
  return times;
}

BornOutcome born_sample(double visibility, double alpha_deg, double beta_deg,
                        RandomStream& rng) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw std::domain_error("born_sample: visibility must lie in [0, 1]");
  }
  const double c = std::cos(2.0 * (alpha_deg - beta_deg) * kDegToRad);
  const int a = rng.coin() ? +1 : -1;
  const double p_b_parallel = 0.5 * (1.0 + a * visibility * c);
  const int b = rng.bernoulli(p_b_parallel) ? +1 : -1;
  return {a, b};
}

}  // namespace bellsim
