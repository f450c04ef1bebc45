#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>

#include "bellsim/rng.hpp"
#include "bellsim/sources.hpp"

using namespace bellsim;

TEST_CASE("fsg_program: q=0 gives the flat table") {
  const FsgProgram prog = FsgProgram::from_q(0.0);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      CHECK(prog.probability(a, b) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("fsg_program: Tsirelson point q=1/sqrt(2)") {
  const FsgProgram prog = FsgProgram::from_q(1.0 / std::sqrt(2.0));
  CHECK(prog.probability(0, 0) == doctest::Approx(0.10669417382415922).epsilon(1e-14));
  CHECK(prog.probability(0, 1) == doctest::Approx(0.01830582617584077).epsilon(1e-13));
}

TEST_CASE("fsg_program: q=1 zeroes the y cells") {
  const FsgProgram prog = FsgProgram::from_q(1.0);
  CHECK(prog.probability(0, 0) == 0.125);
  CHECK(prog.probability(0, 3) == 0.0);  // (H, tilde-minus)
}

TEST_CASE("fsg_program rejects q outside [-1, 1]") {
  CHECK_THROWS_AS(FsgProgram::from_q(1.0001), std::domain_error);
  CHECK_THROWS_AS(FsgProgram::from_q(-1.5), std::domain_error);
}

TEST_CASE("program tables are distributions with uniform margins") {
  for (const double q : {-1.0, -0.5, 0.0, 1.0 / std::sqrt(2.0), 0.699275, 1.0}) {
    const FsgProgram prog = FsgProgram::from_q(q);
    double sum = 0.0;
    for (int a = 0; a < 4; ++a) {
      double row = 0.0;
      double col = 0.0;
      for (int b = 0; b < 4; ++b) {
        CHECK(prog.probability(a, b) >= 0.0);
        row += prog.probability(a, b);
        col += prog.probability(b, a);
        sum += prog.probability(a, b);
      }
      CHECK(row == doctest::Approx(0.25).epsilon(1e-14));
      CHECK(col == doctest::Approx(0.25).epsilon(1e-14));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("expected_S evaluates 4q from the table") {
  for (const double q : {-1.0, -0.5, 0.0, 1.0 / std::sqrt(2.0), 0.699275, 0.5, 1.0}) {
    CHECK(expected_S(FsgProgram::from_q(q)) == doctest::Approx(4.0 * q).epsilon(1e-13));
  }
  CHECK(expected_S(FsgProgram::from_q(0.5)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(expected_S(FsgProgram::from_q(1.0)) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("from_matrix round-trips and rejects off-pattern tables") {
  const FsgProgram prog = FsgProgram::from_q(0.3);
  const FsgProgram again = FsgProgram::from_matrix(prog.matrix());
  CHECK(again.q() == doctest::Approx(0.3).epsilon(1e-12));

  std::array<double, 16> broken = prog.matrix();
  broken[2] += 1e-3;
  CHECK_THROWS_AS(FsgProgram::from_matrix(broken), std::domain_error);
}

TEST_CASE("sample_faked_pair: forbidden cells never fire at q=1") {
  const FsgProgram prog = FsgProgram::from_q(1.0);
  RandomStream rng(101);
  for (int i = 0; i < 100000; ++i) {
    const SampledPair pair = sample_faked_pair(prog, rng);
    const int cell = pair.sender_pol * 4 + pair.receiver_pol;
    CHECK(FsgProgram::sign_pattern()[static_cast<std::size_t>(cell)] > 0);
  }
}

TEST_CASE("sample_faked_pair: flat program is empirically flat") {
  const FsgProgram prog = FsgProgram::from_q(0.0);
  RandomStream rng(102);
  std::array<int, 16> hits{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const SampledPair pair = sample_faked_pair(prog, rng);
    ++hits[static_cast<std::size_t>(pair.sender_pol * 4 + pair.receiver_pol)];
  }
  const double p = 1.0 / 16.0;
  const double sigma = std::sqrt(p * (1.0 - p) / n);
  for (const int h : hits) {
    CHECK(std::abs(static_cast<double>(h) / n - p) <= 3.0 * sigma);
  }
}

TEST_CASE("sampled sender marginals follow the quarter rows") {
  const FsgProgram prog = FsgProgram::from_q(0.3);
  RandomStream rng(103);
  int h_count = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (sample_faked_pair(prog, rng).sender_pol == 0) ++h_count;
  }
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(static_cast<double>(h_count) / n - 0.25) <= 3.0 * sigma);
}

TEST_CASE("polarization tables: receiver side sits 22.5 degrees off") {
  CHECK(sender_polarization(0).angle_deg == 0.0);
  CHECK(sender_polarization(1).angle_deg == 90.0);
  CHECK(sender_polarization(2).angle_deg == 45.0);
  CHECK(sender_polarization(3).angle_deg == 135.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(receiver_polarization(i).angle_deg ==
          doctest::Approx(normalize_angle_deg(kPolAnglesDeg[static_cast<std::size_t>(i)] + 22.5)));
  }
  CHECK(pol_basis(0) == 0);
  CHECK(pol_basis(3) == 1);
  CHECK(pol_outcome(0) == 1);
  CHECK(pol_outcome(1) == 0);
  CHECK(pol_outcome(2) == 1);
  CHECK(pol_outcome(3) == 0);
}

TEST_CASE("emission_times: empty, sorted, duplicate-free") {
  RandomStream rng(104);
  CHECK(emission_times(1e6, 0, rng).empty());
  const auto times = emission_times(1e6, 20000, rng);
  for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
  CHECK(times.front() >= 1);
}

TEST_CASE("emission_times: mean gap matches the rate") {
  RandomStream rng(105);
  const std::size_t n = 100000;
  const auto times = emission_times(1e6, n, rng);
  const double mean_gap_ns =
      static_cast<double>(times.back()) / static_cast<double>(n);
  const double sigma = 1000.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean_gap_ns - 1000.0) <= 3.0 * sigma + 1.0);  // +1 ns quantization slack
}

TEST_CASE("emission_times rejects non-positive rates") {
  RandomStream rng(106);
  CHECK_THROWS_AS(emission_times(0.0, 10, rng), std::domain_error);
}

TEST_CASE("born_sample: perfect correlation at equal angles") {
  RandomStream rng(107);
  for (int i = 0; i < 10000; ++i) {
    const BornOutcome joint = born_sample(1.0, 33.0, 33.0, rng);
    CHECK(joint.a == joint.b);
  }
}

TEST_CASE("born_sample: zero visibility is white noise") {
  RandomStream rng(108);
  std::array<int, 4> cells{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const BornOutcome joint = born_sample(0.0, 0.0, 67.5, rng);
    ++cells[static_cast<std::size_t>((joint.a > 0 ? 0 : 2) + (joint.b > 0 ? 0 : 1))];
  }
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  for (const int c : cells) {
    CHECK(std::abs(static_cast<double>(c) / n - 0.25) <= 3.0 * sigma);
  }
}

TEST_CASE("born_sample: correlation tracks V cos(2 delta)") {
  RandomStream rng(109);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const BornOutcome joint = born_sample(1.0, 22.5, 0.0, rng);
    sum += joint.a * joint.b;
  }
  const double expected = std::cos(2.0 * 22.5 * M_PI / 180.0);  // 0.7071...
  const double sigma = std::sqrt((1.0 - expected * expected) / n);
  CHECK(std::abs(sum / n - expected) <= 3.0 * sigma);
}

TEST_CASE("born_sample: no-signaling marginal under remote angle changes") {
  RandomStream rng(110);
  const int n = 100000;
  int plus_near = 0;
  int plus_far = 0;
  for (int i = 0; i < n; ++i) {
    if (born_sample(0.93, 0.0, 10.0, rng).a > 0) ++plus_near;
  }
  for (int i = 0; i < n; ++i) {
    if (born_sample(0.93, 0.0, 70.0, rng).a > 0) ++plus_far;
  }
  const double p1 = static_cast<double>(plus_near) / n;
  const double p2 = static_cast<double>(plus_far) / n;
  const double pooled = 0.5 * (p1 + p2);
  const double z =
      std::abs(p1 - p2) / std::sqrt(pooled * (1.0 - pooled) * (2.0 / n));
  CHECK(z <= 3.0);
}

TEST_CASE("born_sample rejects visibility outside [0, 1]") {
  RandomStream rng(111);
  CHECK_THROWS_AS(born_sample(1.2, 0.0, 0.0, rng), std::domain_error);
  CHECK_THROWS_AS(born_sample(-0.1, 0.0, 0.0, rng), std::domain_error);
}
