#include "bellsim/chsh_stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bellsim/errors.hpp"

namespace bellsim {

Correlator correlation(std::int64_t n11, std::int64_t n10, std::int64_t n01,
                       std::int64_t n00) {
  if (n11 < 0 || n10 < 0 || n01 < 0 || n00 < 0) {
    throw std::invalid_argument("correlation: counts must be non-negative");
  }
  const double total = static_cast<double>(n11 + n10 + n01 + n00);
  if (total <= 0.0) {
    throw UndefinedCorrelatorError("correlation: no events in this setting combination");
  }
  const double diff = static_cast<double>(n11 - n10 - n01 + n00);
  const double E = diff / total;
  // dE/dN11 = dE/dN00 = (T - D)/T^2, dE/dN10 = dE/dN01 = -(T + D)/T^2
  const double d_same = (total - diff) / (total * total);
  const double d_cross = (total + diff) / (total * total);
  const double variance = d_same * d_same * static_cast<double>(n11 + n00) +
                          d_cross * d_cross * static_cast<double>(n10 + n01);
  return {E, std::sqrt(variance), {n11, n10, n01, n00}};
}

const char* to_string(BoundClass c) {
  switch (c) {
    case BoundClass::Classical: return "Classical";
    case BoundClass::Quantum: return "Quantum";
    case BoundClass::Superquantum: return "Superquantum";
  }
  return "?";
}

BoundClass classify(double S) {
  const double a = std::abs(S);
  if (a <= 2.0) return BoundClass::Classical;
  if (a <= 2.0 * std::sqrt(2.0)) return BoundClass::Quantum;
  if (a <= 4.0) return BoundClass::Superquantum;
  throw std::invalid_argument("classify: |S| > 4 cannot arise from valid correlators");
}

ChshResult chsh(const std::array<Correlator, 4>& correlators) {
  ChshResult result;
  result.correlators = correlators;
  result.S = correlators[0].E + correlators[1].E + correlators[2].E - correlators[3].E;
  double var = 0.0;
  for (const Correlator& c : correlators) var += c.dE * c.dE;
  result.dS = std::sqrt(var);
  result.classification = classify(result.S);
  return result;
}

std::array<Correlator, 4> correlators_from_tally(const CoincidenceTally& tally) {
  // setting order (basis_a, basis_b): (0,0), (1,0), (0,1), (1,1)
  static constexpr std::array<std::array<int, 2>, 4> kSettings{
      {{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
  static constexpr std::array<const char*, 4> kNames{"(A,B)", "(A',B)", "(A,B')",
                                                     "(A',B')"};
  std::array<Correlator, 4> out{};
  for (std::size_t s = 0; s < 4; ++s) {
    const int ba = kSettings[s][0];
    const int bb = kSettings[s][1];
    try {
      out[s] = correlation(tally.at(ba, bb, 1, 1), tally.at(ba, bb, 1, 0),
                           tally.at(ba, bb, 0, 1), tally.at(ba, bb, 0, 0));
    } catch (const UndefinedCorrelatorError&) {
      throw UndefinedCorrelatorError(std::string("no coincidences in setting ") +
                                     kNames[s]);
    }
  }
  return out;
}

ChshResult chsh_from_tally(const CoincidenceTally& tally) {
  return chsh(correlators_from_tally(tally));
}

}  // namespace bellsim
