#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ddlab/rng.hpp"
#include "ddlab/sequence.hpp"
#include "doctest.h"

using namespace ddlab;

namespace {
const double kPi = std::acos(-1.0);

std::string temp_path(const char* name) {
  return std::string("seqtest_") + name;
}
}  // namespace

TEST_CASE("cpmg places pulses at (i-1/2)*tau with phase pi/2") {
  PulseSequence s = make_cpmg(2, 0.1);
  REQUIRE(s.n_pulses() == 2);
  CHECK(s.pulse_time(0) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(s.pulse_time(1) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(s.total_time() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(s.pulse_phases[0] == kPi / 2);
  CHECK(s.pulse_phases[1] == kPi / 2);

  PulseSequence q = make_cpmg(4, 0.2);
  REQUIRE(q.n_pulses() == 4);
  CHECK(q.total_time() == doctest::Approx(0.8).epsilon(1e-15));
  const double expected[] = {0.1, 0.3, 0.5, 0.7};
  for (int i = 0; i < 4; ++i)
    CHECK(q.pulse_time(i) == doctest::Approx(expected[i]).epsilon(1e-15));
}

TEST_CASE("cpmg supports odd pulse counts with equal intervals") {
  PulseSequence s = make_cpmg(31, 0.013);
  REQUIRE(s.n_pulses() == 31);
  CHECK(s.total_time() == doctest::Approx(31 * 0.013).epsilon(1e-15));
  double first_gap = s.pulse_time(0);
  for (int i = 1; i < 31; ++i)
    CHECK(s.pulse_time(i) - s.pulse_time(i - 1) ==
          doctest::Approx(0.013).epsilon(1e-12));
  CHECK(first_gap == doctest::Approx(0.013 / 2).epsilon(1e-12));
  CHECK(s.total_time() - s.pulse_time(30) ==
        doctest::Approx(0.013 / 2).epsilon(1e-12));
}

TEST_CASE("cpmg rejects bad arguments") {
  CHECK_THROWS_AS(make_cpmg(0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_cpmg(-2, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_cpmg(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_cpmg(4, -0.5), std::invalid_argument);
}

TEST_CASE("long grids have no cumulative timing drift") {
  const double tau = 0.2;
  PulseSequence s = make_cpmg(10000, tau);
  for (int i : {0, 1, 4999, 9998, 9999}) {
    double expected = (i + 0.5) * tau;
    CHECK(std::abs(s.pulse_time(i) - expected) < 1e-12 * s.total_time());
  }
  CHECK(s.total_time() == doctest::Approx(2000.0).epsilon(1e-15));
}

TEST_CASE("sub-tick times are rejected") {
  CHECK_THROWS_AS(to_ticks(1.0e-10), std::invalid_argument);
  CHECK(to_ticks(5.0e-10) == 1);
  CHECK(to_ticks(1.0) == kTicksPerSecond);
}

TEST_CASE("kdd_xy cycles the ten-phase list on the cpmg grid") {
  PulseSequence s = make_kdd_xy(20, 0.2);
  PulseSequence c = make_cpmg(20, 0.2);
  REQUIRE(s.n_pulses() == 20);
  for (int i = 0; i < 20; ++i) CHECK(s.pulse_ticks[i] == c.pulse_ticks[i]);

  const auto& cycle = kdd_phase_cycle();
  REQUIRE(cycle.size() == 10);
  const double expected[10] = {kPi / 6,     0.0,     kPi / 2, 0.0,     kPi / 6,
                               2 * kPi / 3, kPi / 2, kPi,     kPi / 2, 2 * kPi / 3};
  for (int i = 0; i < 10; ++i) CHECK(cycle[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  for (int i = 0; i < 20; ++i)
    CHECK(s.pulse_phases[i] == doctest::Approx(expected[i % 10]).epsilon(1e-15));
}

TEST_CASE("kdd_xy alternating phase sum is -pi per 20-pulse block") {
  PulseSequence s = make_kdd_xy(40, 0.05);
  for (int block = 0; block < 2; ++block) {
    double sum = 0.0;
    for (int i = 0; i < 20; ++i) {
      int sign = (i % 2 == 0) ? 1 : -1;  // (-1)^(i+1) with 1-based i
      sum += sign * s.pulse_phases[block * 20 + i];
    }
    CHECK(sum == doctest::Approx(-kPi).epsilon(1e-12));
  }
}

TEST_CASE("kdd_xy repeats identical 20-pulse blocks") {
  PulseSequence s = make_kdd_xy(40, 0.05);
  for (int i = 0; i < 20; ++i)
    CHECK(s.pulse_phases[i] == s.pulse_phases[20 + i]);
}

TEST_CASE("kdd_xy rejects counts that are not multiples of 20") {
  CHECK_THROWS_AS(make_kdd_xy(21, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_kdd_xy(10, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_kdd_xy(0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_kdd_xy(20, -1.0), std::invalid_argument);
}

TEST_CASE("hahn is a single centered pi/2-phase pulse") {
  PulseSequence s = make_hahn(2.0);
  REQUIRE(s.n_pulses() == 1);
  CHECK(s.pulse_time(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.pulse_phases[0] == kPi / 2);
  CHECK(make_hahn(1.0).n_pulses() == 1);
  CHECK_THROWS_AS(make_hahn(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_hahn(-1.0), std::invalid_argument);
}

TEST_CASE("free evolution has no pulses") {
  PulseSequence s = make_free(1.5);
  CHECK(s.n_pulses() == 0);
  CHECK(s.total_time() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(make_free(0.0), std::invalid_argument);
}

TEST_CASE("constructed sequences satisfy the structural invariants") {
  RandomStream rng(2024, 0);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 1 + static_cast<int>(rng.below(50));
    double tau = 0.001 * (1 + rng.below(500));
    PulseSequence s = make_cpmg(n, tau);
    CHECK_NOTHROW(s.validate());
    REQUIRE(s.pulse_ticks.front() > 0);
    REQUIRE(s.pulse_ticks.back() < s.total_ticks);
    for (int i = 1; i < s.n_pulses(); ++i)
      REQUIRE(s.pulse_ticks[i] > s.pulse_ticks[i - 1]);
  }
}

TEST_CASE("validate rejects malformed sequences") {
  PulseSequence s = make_cpmg(4, 0.1);
  PulseSequence bad = s;
  bad.pulse_ticks[2] = bad.pulse_ticks[1];  // not strictly increasing
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.pulse_ticks.back() = bad.total_ticks;  // pulse at the boundary
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.pulse_phases.pop_back();  // length mismatch
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sequence csv round-trips exactly") {
  PulseSequence s = make_kdd_xy(20, 0.123);
  std::string path = temp_path("roundtrip.csv");
  write_sequence_csv(path, s, {"note=test"});
  PulseSequence r = read_sequence_csv(path);
  REQUIRE(r.n_pulses() == s.n_pulses());
  CHECK(r.total_ticks == s.total_ticks);
  for (int i = 0; i < s.n_pulses(); ++i) {
    CHECK(r.pulse_ticks[i] == s.pulse_ticks[i]);
    CHECK(r.pulse_phases[i] == doctest::Approx(s.pulse_phases[i]).epsilon(1e-12));
  }
  // header shape: comment with total time, then the column names
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  char line1[256] = {0}, line2[256] = {0}, line3[256] = {0};
  REQUIRE(std::fgets(line1, sizeof line1, f) != nullptr);
  REQUIRE(std::fgets(line2, sizeof line2, f) != nullptr);
  REQUIRE(std::fgets(line3, sizeof line3, f) != nullptr);
  std::fclose(f);
  CHECK(std::string(line1).find("note=test") != std::string::npos);
  CHECK(std::string(line2).find("total_time_s=") != std::string::npos);
  CHECK(std::string(line3).find("index,time_s,phase_rad") != std::string::npos);
  std::remove(path.c_str());
}
