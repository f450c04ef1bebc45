#ifndef BELLSIM_CHSH_STATS_HPP
#define BELLSIM_CHSH_STATS_HPP

#include <array>
#include <cstdint>

#include "bellsim/coincidence.hpp"

namespace bellsim {

// Correlation function of one setting combination,
//   E = (N11 - N10 - N01 + N00) / (N11 + N10 + N01 + N00),
// with dE from propagating independent Poisson fluctuations of the counts:
//   dE^2 = sum_i (dE/dN_i)^2 * N_i.
struct Correlator {
  double E = 0.0;
  double dE = 0.0;
  std::array<std::int64_t, 4> counts{};  // N11, N10, N01, N00
};

Correlator correlation(std::int64_t n11, std::int64_t n10, std::int64_t n01,
                       std::int64_t n00);

enum class BoundClass { Classical, Quantum, Superquantum };

const char* to_string(BoundClass c);

// |S| against the classical bound 2 and the quantum bound 2*sqrt(2);
// values on a boundary classify downward.
BoundClass classify(double S);

// Setting order: index 0 = (A,B), 1 = (A',B), 2 = (A,B'), 3 = (A',B'),
// i.e. (basis_a, basis_b) = (0,0), (1,0), (0,1), (1,1).
struct ChshResult {
  std::array<Correlator, 4> correlators{};
  double S = 0.0;
  double dS = 0.0;
  BoundClass classification = BoundClass::Classical;
  Efficiency efficiency;
};

// S = E_AB + E_A'B + E_AB' - E_A'B', dS = sqrt(sum dE^2).
// The efficiency field is left for the caller to fill.
ChshResult chsh(const std::array<Correlator, 4>& correlators);

// The four correlators of a coincidence tally. Throws AnalysisError naming
// the first setting combination with zero events.
std::array<Correlator, 4> correlators_from_tally(const CoincidenceTally& tally);

ChshResult chsh_from_tally(const CoincidenceTally& tally);

}  // namespace bellsim

#endif
