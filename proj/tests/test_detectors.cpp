#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bellsim/detectors.hpp"
#include "bellsim/rng.hpp"

using namespace bellsim;

namespace {

PowerMap map4(double a, double b, double c, double d) {
  PowerMap m;
  m.channels = 4;
  m.power = {a, b, c, d};
  return m;
}

PowerMap map2(double a, double b) {
  PowerMap m;
  m.channels = 2;
  m.power = {a, b, 0.0, 0.0};
  return m;
}

}  // namespace

TEST_CASE("respond_faked: threshold comparison on the passive power map") {
  DetectorParams params;
  params.click_threshold = 0.3;
  RandomStream rng(201);
  const auto clicks =
      respond_faked(map4(0.5, 0.0, 0.25, 0.25), flat_power_map(0.15, 4), params, rng);
  REQUIRE(clicks.size() == 1);
  CHECK(clicks[0] == 0);
}

TEST_CASE("respond_faked: wrong active basis gives no click") {
  DetectorParams params;
  params.click_threshold = 0.7;
  RandomStream rng(202);
  CHECK(respond_faked(map2(0.5, 0.5), flat_power_map(0.15, 2), params, rng).empty());
  // matched basis fires
  CHECK(respond_faked(map2(1.0, 0.0), flat_power_map(0.15, 2), params, rng) ==
        std::vector<int>{0});
}

TEST_CASE("respond_faked: unblinded detectors ignore the trigger") {
  DetectorParams params;
  params.click_threshold = 0.3;
  params.blind_threshold = 0.1;
  RandomStream rng(203);
  CHECK(respond_faked(map4(0.5, 0.0, 0.25, 0.25), flat_power_map(0.05, 4), params, rng)
            .empty());
}

TEST_CASE("respond_faked: channel count mismatch is a structural error") {
  DetectorParams params;
  RandomStream rng(204);
  CHECK_THROWS_AS(respond_faked(map4(1, 0, 0, 0), flat_power_map(0.15, 2), params, rng),
                  std::invalid_argument);
}

TEST_CASE("respond_faked is deterministic at eps = 0") {
  DetectorParams params;
  params.click_threshold = 0.35;
  RandomStream rng(205);
  const PowerMap trigger = map4(0.5, 0.0, 0.25, 0.25);
  const PowerMap blinding = flat_power_map(0.15, 4);
  const auto first = respond_faked(trigger, blinding, params, rng);
  for (int i = 0; i < 50; ++i) {
    CHECK(respond_faked(trigger, blinding, params, rng) == first);
  }
}

TEST_CASE("respond_faked: eps = 1 always adds one wrong channel") {
  DetectorParams params;
  params.click_threshold = 0.35;
  params.imperfection_eps = 1.0;
  RandomStream rng(206);
  for (int i = 0; i < 1000; ++i) {
    const auto clicks =
        respond_faked(map4(0.5, 0.0, 0.25, 0.25), flat_power_map(0.15, 4), params, rng);
    REQUIRE(clicks.size() == 2);
    CHECK(clicks[0] == 0);
    CHECK(clicks[1] != 0);
  }
}

TEST_CASE("passive attack window: exactly one click in the trigger's family") {
  RandomStream rng(207);
  AnalyzerConfig analyzer;  // passive
  for (int pol = 0; pol < 4; ++pol) {
    for (int trial = 0; trial < 50; ++trial) {
      DetectorParams params;
      params.click_threshold = 0.25 + rng.uniform() * 0.25 + 1e-9;  // (0.25, 0.5]
      const FakedState fs{sender_polarization(pol), 1.0, 0.15};
      const FakedPowerMaps maps = faked_power_map(fs, analyzer, std::nullopt);
      const auto clicks = threshold_clicks(maps.trigger, maps.blinding, params);
      REQUIRE(clicks.size() == 1);
      CHECK(clicks[0] / 2 == pol_basis(pol));
      const OutcomeLabels labels;
      CHECK(labels.bit(clicks[0] / 2, clicks[0] % 2 == 0) == pol_outcome(pol));
    }
  }
}

TEST_CASE("active attack window: click iff plate matches the trigger family") {
  RandomStream rng(208);
  AnalyzerConfig analyzer;
  analyzer.choice = BasisChoice::Active;
  int clicks_total = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const int pol = static_cast<int>(rng.uniform_int(4));
    const int plate = rng.coin();
    DetectorParams params;
    params.click_threshold = 0.5 + rng.uniform() * 0.5;  // (0.5, 1.0]
    const FakedState fs{sender_polarization(pol), 1.0, 0.15};
    const FakedPowerMaps maps = faked_power_map(fs, analyzer, 45.0 * plate);
    const auto clicks = threshold_clicks(maps.trigger, maps.blinding, params);
    if (plate == pol_basis(pol)) {
      REQUIRE(clicks.size() == 1);
      const OutcomeLabels labels;
      CHECK(labels.bit(plate, clicks[0] == 0) == pol_outcome(pol));
      ++clicks_total;
    } else {
      CHECK(clicks.empty());
    }
  }
  const double frac = static_cast<double>(clicks_total) / n;
  const double sigma = std::sqrt(0.25 / n);
  CHECK(std::abs(frac - 0.5) <= 3.0 * sigma);
}

TEST_CASE("respond_genuine: eta endpoints") {
  RandomStream rng(209);
  DetectorParams params;
  const OutcomeLabels labels;
  params.eta = 1.0;
  for (int i = 0; i < 100; ++i) {
    const auto click = respond_genuine(+1, 1, params, labels, rng);
    REQUIRE(click.has_value());
    CHECK(click->basis == 1);
    CHECK(click->outcome == 1);
  }
  params.eta = 0.0;
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(respond_genuine(+1, 0, params, labels, rng).has_value());
  }
}

TEST_CASE("respond_genuine: intermediate eta is binomial") {
  RandomStream rng(210);
  DetectorParams params;
  params.eta = 0.5;
  const OutcomeLabels labels;
  const int n = 100000;
  int fired = 0;
  for (int i = 0; i < n; ++i) {
    if (respond_genuine(-1, 0, params, labels, rng)) ++fired;
  }
  const double sigma = std::sqrt(0.25 / n);
  CHECK(std::abs(static_cast<double>(fired) / n - 0.5) <= 3.0 * sigma);
}

TEST_CASE("outcome labels: swapped basis flips the reported bit") {
  OutcomeLabels labels;
  labels.parallel_is_one = {true, false};
  CHECK(labels.bit(0, true) == 1);
  CHECK(labels.bit(0, false) == 0);
  CHECK(labels.bit(1, true) == 0);
  CHECK(labels.bit(1, false) == 1);
}

TEST_CASE("dark_counts: rate zero is silent") {
  RandomStream rng(211);
  DetectorParams params;
  CHECK(dark_counts(params, 1000000000, Party::Alice, rng).empty());
}

TEST_CASE("dark_counts: Poisson count and sorted times") {
  RandomStream rng(212);
  DetectorParams params;
  params.dark_rate = 5000.0;  // per second
  const std::int64_t duration_ns = 2000000000;  // 2 s -> mean 10000
  const auto events = dark_counts(params, duration_ns, Party::Bob, rng);
  const double mean = 10000.0;
  CHECK(std::abs(static_cast<double>(events.size()) - mean) <= 3.0 * std::sqrt(mean));
  for (std::size_t i = 1; i < events.size(); ++i) {
    CHECK(events[i].time_ns >= events[i - 1].time_ns);
  }
  for (const auto& ev : events) {
    CHECK(ev.party == Party::Bob);
    CHECK(ev.time_ns >= 0);
    CHECK(ev.time_ns <= duration_ns);
  }
}

TEST_CASE("active_basis_sequence: size, balance, reproducibility") {
  {
    RandomStream rng(213);
    CHECK(active_basis_sequence(rng, 0, 10).block_setting.empty());
  }
  RandomStream rng(214);
  const BasisSchedule schedule = active_basis_sequence(rng, 4561, 1590);
  REQUIRE(schedule.block_setting.size() == 4561);
  int ones = 0;
  for (const auto s : schedule.block_setting) {
    CHECK((s == 0 || s == 1));
    ones += s;
  }
  const double frac = static_cast<double>(ones) / 4561.0;
  CHECK(std::abs(frac - 0.5) <= 3.0 * std::sqrt(0.25 / 4561.0));
  CHECK(schedule.setting(0) == schedule.block_setting[0]);
  CHECK(schedule.setting(1589) == schedule.block_setting[0]);
  CHECK(schedule.setting(1590) == schedule.block_setting[1]);

  RandomStream rng_again(214);
  const BasisSchedule repeat = active_basis_sequence(rng_again, 4561, 1590);
  CHECK(repeat.block_setting == schedule.block_setting);
}

TEST_CASE("power_monitor thresholds") {
  const std::array<PowerMap, 1> dark{flat_power_map(0.0, 4)};
  CHECK_FALSE(power_monitor(dark, 0.05));

  const std::array<PowerMap, 1> blinding{flat_power_map(0.15, 4)};
  CHECK(power_monitor(blinding, 0.05));
  CHECK(power_monitor(blinding, 0.1));  // total 0.6 across four channels

  CHECK_FALSE(power_monitor(blinding, std::numeric_limits<double>::infinity()));
}
