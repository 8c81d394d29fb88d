#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ddlab/filter.hpp"
#include "ddlab/quadrature.hpp"
#include "ddlab/rng.hpp"
#include "ddlab/sequence.hpp"
#include "doctest.h"

using namespace ddlab;

namespace {
const double kPi = std::acos(-1.0);

// direct evaluation of the defining sum, usable at negative omega too
std::complex<double> direct_y(const PulseSequence& seq, double omega) {
  std::vector<double> t{0.0};
  for (int i = 0; i < seq.n_pulses(); ++i) t.push_back(seq.pulse_time(i));
  t.push_back(seq.total_time());
  std::complex<double> sum = 0.0;
  const std::complex<double> i1(0.0, 1.0);
  for (size_t j = 0; j + 1 < t.size(); ++j) {
    std::complex<double> term =
        std::exp(i1 * omega * t[j]) - std::exp(i1 * omega * t[j + 1]);
    sum += (j % 2 == 0 ? 1.0 : -1.0) * term;
  }
  return sum / omega;
}

double sum_rule_integral(const PulseSequence& seq, double omega_max) {
  double total = 0.0;
  double step = kPi / seq.total_time();  // half the lobe spacing
  double lo = 0.0;
  while (lo < omega_max) {
    double hi = std::min(lo + step, omega_max);
    total += integrate_gl([&](double w) { return filter_y_abs_sq(seq, w); }, lo,
                          hi, 16);
    lo = hi;
  }
  return total + filter_tail_estimate(seq, omega_max);
}
}  // namespace

TEST_CASE("free evolution filter matches its closed form") {
  PulseSequence s = make_free(1.0);
  CHECK(std::abs(filter_y(s, 2 * kPi).y) < 1e-14);
  CHECK(std::abs(filter_y(s, 0.0).y) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(filter_y(s, 1e-9).y) == doctest::Approx(1.0).epsilon(1e-9));
  for (double w : {0.3, 1.7, 4.9, 40.0}) {
    double expected = 4 * std::pow(std::sin(w * 1.0 / 2), 2) / (w * w);
    CHECK(filter_y_abs_sq(s, w) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("echo sequences cancel static offsets") {
  CHECK(std::abs(filter_y(make_cpmg(2, 0.1), 0.0).y) < 1e-15);
  CHECK(std::abs(filter_y(make_cpmg(8, 0.05), 0.0).y) < 1e-15);
  CHECK(std::abs(filter_y(make_cpmg(31, 0.01), 0.0).y) < 1e-15);
  CHECK(std::abs(filter_y(make_hahn(1.0), 0.0).y) < 1e-15);
  // small-omega continuity of the series limit
  PulseSequence s = make_cpmg(4, 0.1);
  CHECK(filter_y_abs_sq(s, 1e-7) ==
        doctest::Approx(filter_y_abs_sq(s, 2e-7) / 4).epsilon(1e-4));
}

TEST_CASE("hahn filter matches 16 sin^4(wT/4) / w^2") {
  PulseSequence s = make_hahn(2.0);
  CHECK(filter_y_abs_sq(s, kPi) == doctest::Approx(16.0 / (kPi * kPi)).epsilon(1e-12));
  for (double w : {0.1, 0.9, 3.3, 17.0}) {
    double expected = 16 * std::pow(std::sin(w * 2.0 / 4), 4) / (w * w);
    CHECK(filter_y_abs_sq(s, w) == doctest::Approx(expected).epsilon(1e-10));
  }
  PulseSequence s04 = make_hahn(0.4);
  for (double w : {0.5, 2.0, 31.4}) {
    double expected = 16 * std::pow(std::sin(w * 0.4 / 4), 4) / (w * w);
    CHECK(filter_y_abs_sq(s04, w) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("cpmg band-center magnitude is 2T/pi for every pulse count") {
  for (int n : {2, 3, 4, 5, 20, 31}) {
    double tau = 0.05;
    PulseSequence s = make_cpmg(n, tau);
    double got = std::sqrt(filter_y_abs_sq(s, kPi / tau));
    CHECK(got == doctest::Approx(2 * s.total_time() / kPi).epsilon(1e-10));
  }
}

TEST_CASE("filter value is consistent with the direct sum") {
  for (int n : {1, 2, 5, 20}) {
    PulseSequence s = make_cpmg(n, 0.07);
    for (double w : {0.11, 1.3, 9.7, 44.8, 151.0}) {
      FilterValue v = filter_y(s, w);
      std::complex<double> ref = direct_y(s, w);
      CHECK(std::abs(v.y - ref) < 1e-12 * (1 + std::abs(ref)));
      CHECK(v.y_abs_sq == doctest::Approx(std::norm(v.y)).epsilon(1e-12));
      // extended definition: y(-w) = -conj(y(w)), so |y| is even
      std::complex<double> neg = direct_y(s, -w);
      CHECK(std::abs(neg + std::conj(v.y)) < 1e-12 * (1 + std::abs(ref)));
      CHECK(std::abs(neg) == doctest::Approx(std::abs(v.y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form uniform-grid filter agrees with the direct sum") {
  for (int n : {2, 5, 20, 31}) {
    double tau = 0.08;
    PulseSequence s = make_cpmg(n, tau);
    for (int k = 1; k <= 400; ++k) {
      double w = 0.11 * k;
      double a = filter_y_abs_sq_uniform(n, tau, w);
      double b = filter_y_abs_sq(s, w);
      CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
    // resonant denominators take the fallback path
    for (double eps : {0.0, 1e-10, 1e-7}) {
      double w = (kPi / tau) * (1 + eps);
      CHECK(filter_y_abs_sq_uniform(n, tau, w) ==
            doctest::Approx(filter_y_abs_sq(s, w)).epsilon(1e-8));
    }
  }
}

TEST_CASE("time rescaling maps the filter as s*|y(w/s)|") {
  RandomStream rng(51, 0);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 1 + static_cast<int>(rng.below(8));
    PulseSequence s;
    s.total_ticks = 4'000'000'000;  // 2 s
    int64_t spacing = s.total_ticks / (n + 1) / 4 * 4;  // keep ticks divisible by 4
    for (int i = 1; i <= n; ++i) {
      int64_t jitter = (static_cast<int64_t>(rng.below(1000)) - 500) * 4000;
      s.pulse_ticks.push_back(spacing * i + jitter);
      s.pulse_phases.push_back(rng.uniform(0.0, 2 * kPi));
    }
    std::sort(s.pulse_ticks.begin(), s.pulse_ticks.end());
    s.validate();
    for (double scale : {0.5, 2.0, 3.0}) {
      PulseSequence t = s;
      t.total_ticks = static_cast<int64_t>(s.total_ticks * scale);
      for (auto& p : t.pulse_ticks) p = static_cast<int64_t>(p * scale);
      t.validate();
      for (double w : {0.7, 3.1, 12.9}) {
        double lhs = std::sqrt(filter_y_abs_sq(t, w / scale));
        double rhs = scale * std::sqrt(filter_y_abs_sq(s, w));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("pulse phases do not enter the filter") {
  PulseSequence c = make_cpmg(40, 0.2);
  PulseSequence k = make_kdd_xy(40, 0.2);
  for (double w = 0.5; w < 100.0; w += 0.37)
    CHECK(filter_y_abs_sq(c, w) == filter_y_abs_sq(k, w));
}

TEST_CASE("the first passband peaks at pi/tau within half a lobe width") {
  for (int n : {10, 20}) {
    double tau = 0.2;
    PulseSequence s = make_cpmg(n, tau);
    double center = kPi / tau;
    double lobe_half = kPi / s.total_time();
    double best_w = 0, best_v = -1;
    for (double w = center - 3 * lobe_half; w <= center + 3 * lobe_half;
         w += lobe_half / 200) {
      double v = filter_y_abs_sq(s, w);
      if (v > best_v) {
        best_v = v;
        best_w = w;
      }
    }
    CHECK(std::abs(best_w - center) <= lobe_half);
    BandInfo band = main_band(n, tau);
    CHECK(band.center == doctest::Approx(center).epsilon(1e-12));
    CHECK(band.lo == doctest::Approx(center - 2 * lobe_half).epsilon(1e-12));
    CHECK(band.hi == doctest::Approx(center + 2 * lobe_half).epsilon(1e-12));
  }
}

TEST_CASE("uniform_interval recognizes cpmg grids only") {
  CHECK(uniform_interval(make_cpmg(8, 0.05)).value() ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(uniform_interval(make_kdd_xy(20, 0.2)).value() ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(uniform_interval(make_hahn(1.0)).value() == doctest::Approx(1.0).epsilon(1e-12));
  PulseSequence s = make_cpmg(4, 0.1);
  s.pulse_ticks[1] += 2;
  CHECK_FALSE(uniform_interval(s).has_value());
  CHECK_FALSE(uniform_interval(make_free(1.0)).has_value());
}

TEST_CASE("notch report evaluates |y|^2 at 2 pi f") {
  PulseSequence s = make_cpmg(10, 0.01);
  auto rep = notch_report(s, {50.0, 150.0});
  REQUIRE(rep.size() == 2);
  CHECK(rep[0].first == 50.0);
  CHECK(rep[0].second == doctest::Approx(filter_y_abs_sq(s, 2 * kPi * 50)).epsilon(1e-14));
  // band center of tau=0.01 is 50 Hz: the non-notch value is about (2T/pi)^2
  CHECK(rep[0].second == doctest::Approx(std::pow(2 * s.total_time() / kPi, 2)).epsilon(1e-9));
  // an exact zero of the filter reports (numerically) zero
  auto zero = notch_report(make_free(1.0), {1.0});
  CHECK(zero[0].second < 1e-30);
}

TEST_CASE("kdd-grid notches at 50 and 150 Hz are at least 8 orders deep") {
  PulseSequence on = make_kdd_xy(20, 0.2);    // lines sit on notches
  PulseSequence off = make_kdd_xy(20, 0.25);  // lines sit in-band
  auto rep_on = notch_report(on, {50.0, 150.0});
  auto rep_off = notch_report(off, {50.0, 150.0});
  for (int i = 0; i < 2; ++i)
    CHECK(rep_off[i].second / rep_on[i].second >= 1e8);
}

TEST_CASE("the filter obeys the sum rule integral |y|^2 = pi T") {
  struct Case {
    PulseSequence seq;
    double omega_max;
  };
  std::vector<Case> cases;
  cases.push_back({make_free(1.0), 5.0e4});
  cases.push_back({make_hahn(2.0), 8.0e4});
  cases.push_back({make_cpmg(2, 0.1), 3.0e5});
  cases.push_back({make_cpmg(31, 0.013), 8.0e5});
  cases.push_back({make_kdd_xy(20, 0.2), 3.0e5});
  for (const auto& c : cases) {
    double integral = sum_rule_integral(c.seq, c.omega_max);
    double expected = kPi * c.seq.total_time();
    CHECK(std::abs(integral - expected) < 1e-3 * expected);
  }
}
