#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddlab/benchmark.hpp"
#include "ddlab/clifford.hpp"
#include "ddlab/spectroscopy.hpp"
#include "ddlab/tomography.hpp"
#include "doctest.h"

using namespace ddlab;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("the clifford group is 24 signed rotations closed under products") {
  const auto& g = clifford_group();
  CHECK(clifford_index(Mat3::Identity()) == 0);
  std::set<std::string> seen;
  for (const auto& m : g) {
    CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
    CHECK((m * m.transpose() - Mat3::Identity()).norm() < 1e-12);
    std::string key;
    for (int i = 0; i < 9 ; ++i) {
      double v = m(i / 3, i % 3);
      CHECK((v == 0.0 || v == 1.0 || v == -1.0));
      key += std::to_string(static_cast<int>(v)) + ",";
    }
    seen.insert(key);
  }
  CHECK(seen.size() == 24);

  for (int i = 0; i < 24; ++i) {
    for (int j = 0; j < 24; ++j) {
      Mat3 prod = g[i] * g[j];
      int k = clifford_compose(i, j);
      CHECK(prod == g[k]);
    }
    int inv = clifford_inverse(i);
    CHECK(g[inv] == g[i].transpose());
    CHECK(clifford_compose(inv, i) == 0);
    CHECK(clifford_index(g[i]) == i);
  }
  CHECK_THROWS_AS(clifford_index(0.9 * Mat3::Identity()), std::invalid_argument);
  CHECK_THROWS_AS(clifford_compose(24, 0), std::invalid_argument);
  CHECK_THROWS_AS(clifford_inverse(-1), std::invalid_argument);
}

TEST_CASE("exact-mode depolarizing survival follows the closed form") {
  PulseErrorModel err;
  err.depolarizing_prob = 0.01;
  std::vector<int> lengths = {1, 2, 5, 10, 50};
  RBRun run = rb_simulate(lengths, err, 4, 0, 17);
  for (size_t i = 0; i < lengths.size(); ++i) {
    double expect = 0.5 + 0.5 * std::pow(0.99, lengths[i] + 1);
    CHECK(run.survival_mean[i] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(run.survival_stderr[i] == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  }
}

TEST_CASE("a perfect run fits to fidelity exactly one") {
  RBRun run = rb_simulate({1, 5, 20}, PulseErrorModel{}, 6, 0, 3);
  for (double s : run.survival_mean) CHECK(s == 1.0);
  RBFit fit = rb_fit(run);
  CHECK(fit.fidelity == 1.0);
  CHECK(fit.p == 1.0);
  CHECK(!fit.uninformative);
}

TEST_CASE("shot-mode runs are deterministic in the seed") {
  PulseErrorModel err;
  err.depolarizing_prob = 0.02;
  RBRun a = rb_simulate({1, 5, 10}, err, 8, 50, 11);
  RBRun b = rb_simulate({1, 5, 10}, err, 8, 50, 11);
  RBRun c = rb_simulate({1, 5, 10}, err, 8, 50, 12);
  for (size_t i = 0; i < a.survival_mean.size(); ++i) {
    CHECK(a.survival_mean[i] == b.survival_mean[i]);
    CHECK(a.survival_stderr[i] == b.survival_stderr[i]);
  }
  bool any_diff = false;
  for (size_t i = 0; i < a.survival_mean.size(); ++i)
    any_diff = any_diff || a.survival_mean[i] != c.survival_mean[i];
  CHECK(any_diff);
}

TEST_CASE("shot-mode means track the exact model") {
  PulseErrorModel err;
  err.depolarizing_prob = 0.05;
  std::vector<int> lengths = {1, 5, 10, 20};
  RBRun run = rb_simulate(lengths, err, 50, 400, 23);
  for (size_t i = 0; i < lengths.size(); ++i) {
    double expect = 0.5 + 0.5 * std::pow(0.95, lengths[i] + 1);
    double sigma = std::max(run.survival_stderr[i], 1e-3);
    CHECK(std::abs(run.survival_mean[i] - expect) < 5 * sigma);
  }
}

TEST_CASE("the simulator validates its arguments") {
  PulseErrorModel err;
  CHECK_THROWS_AS(rb_simulate({}, err, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(rb_simulate({5, 5}, err, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(rb_simulate({5, 2}, err, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(rb_simulate({0, 2}, err, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(rb_simulate({1, 2}, err, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(rb_simulate({1, 2}, err, 4, -1, 1), std::invalid_argument);
  PulseErrorModel bad;
  bad.depolarizing_prob = 2.0;
  CHECK_THROWS_AS(rb_simulate({1, 2}, bad, 4, 0, 1), std::invalid_argument);
}

TEST_CASE("a small gate error is resolved from exact survival curves") {
  PulseErrorModel err;
  err.depolarizing_prob = 2.4e-4;
  RBRun run = rb_simulate({1, 1000, 2000, 4000, 8000}, err, 2, 0, 5);
  RBFit fit = rb_fit(run);
  CHECK(!fit.uninformative);
  CHECK(fit.fidelity == doctest::Approx(0.99988).epsilon(1e-7));
  CHECK(std::abs(fit.fidelity - (1.0 - err.depolarizing_prob / 2)) < 1e-5);
}

TEST_CASE("flat survival data is flagged uninformative") {
  RBRun run;
  run.lengths = {1, 10, 100};
  run.survival_mean = {0.5, 0.5, 0.5};
  run.survival_stderr = {0.01, 0.01, 0.01};
  run.n_settings = 8;
  RBFit fit = rb_fit(run);
  CHECK(fit.uninformative);
  CHECK(std::isnan(fit.fidelity));
  CHECK(fit.message.find("flat") != std::string::npos);

  RBRun tiny;
  tiny.lengths = {1, 10};
  tiny.survival_mean = {0.9, 0.8};
  tiny.survival_stderr = {0.01, 0.01};
  CHECK_THROWS_AS(rb_fit(tiny), std::invalid_argument);
}

TEST_CASE("benchmark runs round-trip through csv") {
  PulseErrorModel err;
  err.depolarizing_prob = 0.01;
  RBRun run = rb_simulate({1, 10, 100}, err, 8, 25, 9);
  write_rb_csv("/tmp/ddlab_rb.csv", run, {"command=test"});
  RBRun back = read_rb_csv("/tmp/ddlab_rb.csv");
  CHECK(back.lengths == run.lengths);
  CHECK(back.n_settings == 8);
  CHECK(back.n_reps == 25);
  for (size_t i = 0; i < run.survival_mean.size(); ++i) {
    CHECK(back.survival_mean[i] ==
          doctest::Approx(run.survival_mean[i]).epsilon(1e-12));
    CHECK(back.survival_stderr[i] ==
          doctest::Approx(run.survival_stderr[i]).epsilon(1e-12));
  }
}

TEST_CASE("confidence intervals from replicated runs cover the true fidelity") {
  PulseErrorModel err;
  err.depolarizing_prob = 1.2e-4;
  double truth = 1.0 - err.depolarizing_prob / 2;
  // every length is deep enough that shot spread across settings is nonzero,
  // keeping the fit on the weighted branch with honest variances
  std::vector<int> lengths = {500, 2000, 4000, 8000, 16000};
  int covered = 0, total = 200;
  for (int rep = 0; rep < total; ++rep) {
    RBRun run = rb_simulate(lengths, err, 8, 200, 9000 + rep);
    RBFit fit = rb_fit(run);
    if (fit.uninformative) continue;
    if (std::abs(fit.fidelity - truth) <= 1.96 * fit.uncertainty) ++covered;
  }
  CHECK(covered >= 170);  // nominal 95% coverage, generous floor
}

TEST_CASE("ideal pulses keep the population pinned for both families") {
  PulseErrorModel ideal;
  for (const char* family : {"cpmg", "kdd_xy"}) {
    auto pts = dd_robustness(family, {20, 100, 2000}, ideal);
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) CHECK(p.population == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("phase cycling tolerates flip-angle errors plain echoes cannot") {
  PulseErrorModel err;
  err.flip_angle_error = 0.01 * kPi;
  auto kdd = dd_robustness("kdd_xy", {1940, 2000}, err);
  auto cpmg = dd_robustness("cpmg", {1940, 2000}, err);
  // plain pulses at a non-revival point have walked far off the pole
  CHECK(cpmg[0].population < 0.6);
  CHECK(kdd[0].population > 0.99);
  // at the revival the comparison collapses to a tie, never a deficit
  CHECK(kdd[1].population >= cpmg[1].population - 1e-9);
  double expect = std::pow(std::cos(1940 * 0.01 * kPi / 2), 2);
  CHECK(cpmg[0].population == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("robustness checkpoints are validated") {
  PulseErrorModel err;
  CHECK_THROWS_AS(dd_robustness("hahn", {20}, err), std::invalid_argument);
  CHECK_THROWS_AS(dd_robustness("cpmg", {}, err), std::invalid_argument);
  CHECK_THROWS_AS(dd_robustness("kdd_xy", {30}, err), std::invalid_argument);
  CHECK_THROWS_AS(dd_robustness("kdd_xy", {40, 20}, err), std::invalid_argument);
  CHECK_THROWS_AS(dd_robustness("cpmg", {0}, err), std::invalid_argument);
  PulseErrorModel wide;
  wide.pulse_duration = 0.02;
  CHECK_THROWS_AS(dd_robustness("cpmg", {10}, wide, 0.01), std::invalid_argument);
}

TEST_CASE("six-state storage through the identity keeps every contrast at one") {
  auto curves = six_state_protocol(identity_storage(), {1.0, 10.0, 100.0});
  REQUIRE(curves.size() == 6);
  std::set<std::string> labels;
  for (const auto& c : curves) {
    labels.insert(c.label);
    REQUIRE(c.contrasts.size() == 3);
    for (double v : c.contrasts) CHECK(v == 1.0);
    CHECK(c.axis.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(labels == std::set<std::string>{"up", "down", "plus_x", "plus_y", "minus_x",
                                        "minus_y"});
}

TEST_CASE("six-state storage through pure dephasing decays only coherences") {
  const double t2 = 300.0;
  std::vector<double> durations;
  for (int i = 1; i <= 8; ++i) durations.push_back(60.0 * i);
  auto curves = six_state_protocol(dephasing_storage(t2), durations);
  for (const auto& c : curves) {
    bool longitudinal = c.label == "up" || c.label == "down";
    for (size_t i = 0; i < durations.size(); ++i) {
      double expect = longitudinal ? 1.0 : std::exp(-durations[i] / t2);
      CHECK(c.contrasts[i] == doctest::Approx(expect).epsilon(1e-12));
    }
    if (!longitudinal) {
      std::vector<std::pair<double, double>> pts;
      for (size_t i = 0; i < durations.size(); ++i)
        pts.push_back({durations[i], c.contrasts[i]});
      T2Fit fit = fit_coherence_time(pts);
      CHECK(fit.t2_s == doctest::Approx(t2).epsilon(0.02));
    }
  }
}

TEST_CASE("the six-state protocol validates its inputs") {
  CHECK_THROWS_AS(six_state_protocol(StorageChannel{}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(six_state_protocol(identity_storage(), {}), std::invalid_argument);
}
