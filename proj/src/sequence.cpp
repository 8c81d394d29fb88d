#include "ddlab/sequence.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
}  // namespace

int64_t to_ticks(double seconds) {
  double scaled = seconds * static_cast<double>(kTicksPerSecond);
  double rounded = std::nearbyint(scaled);
  if (std::abs(scaled - rounded) > 1e-6 * std::max(1.0, std::abs(scaled)))
    fail("time " + std::to_string(seconds) + " s is not on the 0.5 ns grid");
  if (std::abs(rounded) >= 9.2e18) fail("time out of range");
  return static_cast<int64_t>(rounded);
}

void PulseSequence::validate() const {
  if (total_ticks <= 0) fail("total time must be positive");
  if (pulse_ticks.size() != pulse_phases.size())
    fail("pulse time/phase length mismatch");
  int64_t prev = 0;
  for (int64_t t : pulse_ticks) {
    if (t <= prev) fail("pulse times must be strictly increasing and > 0");
    prev = t;
  }
  if (!pulse_ticks.empty() && pulse_ticks.back() >= total_ticks)
    fail("pulse times must lie inside (0, T)");
}

PulseSequence make_cpmg(int n_pulses, double tau_s) {
  if (n_pulses <= 0) fail("cpmg needs at least one pulse");
  if (!(tau_s > 0)) fail("cpmg interval must be positive");
  int64_t tau = to_ticks(tau_s);
  if (tau % 2 != 0) fail("cpmg interval must be on the 1 ns grid");
  PulseSequence seq;
  seq.label = "cpmg";
  seq.total_ticks = tau * n_pulses;
  seq.pulse_ticks.reserve(n_pulses);
  seq.pulse_phases.assign(n_pulses, kPi / 2);
  for (int i = 1; i <= n_pulses; ++i)
    seq.pulse_ticks.push_back(tau * i - tau / 2);
  seq.validate();
  return seq;
}

const std::vector<double>& kdd_phase_cycle() {
  static const std::vector<double> cycle = {
      kPi / 6,     0.0,    kPi / 2, 0.0,    kPi / 6,
      2 * kPi / 3, kPi / 2, kPi,     kPi / 2, 2 * kPi / 3};
  return cycle;
}

PulseSequence make_kdd_xy(int n_pulses, double tau_s) {
  if (n_pulses <= 0 || n_pulses % 20 != 0)
    fail("kdd_xy pulse count must be a positive multiple of 20");
  PulseSequence seq = make_cpmg(n_pulses, tau_s);
  seq.label = "kdd_xy";
  const auto& cycle = kdd_phase_cycle();
  for (int i = 0; i < n_pulses; ++i) seq.pulse_phases[i] = cycle[i % 10];
  return seq;
}

PulseSequence make_hahn(double total_time_s) {
  if (!(total_time_s > 0)) fail("hahn total time must be positive");
  int64_t total = to_ticks(total_time_s);
  if (total % 2 != 0) fail("hahn total time must be on the 1 ns grid");
  PulseSequence seq;
  seq.label = "hahn";
  seq.total_ticks = total;
  seq.pulse_ticks = {total / 2};
  seq.pulse_phases = {kPi / 2};
  seq.validate();
  return seq;
}

PulseSequence make_free(double total_time_s) {
  if (!(total_time_s > 0)) fail("total time must be positive");
  PulseSequence seq;
  seq.label = "free";
  seq.total_ticks = to_ticks(total_time_s);
  seq.validate();
  return seq;
}

void write_sequence_csv(const std::string& path, const PulseSequence& seq,
                        const std::vector<std::string>& header_comments) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& c : header_comments) std::fprintf(f, "# %s\n", c.c_str());
  std::fprintf(f, "# total_time_s=%.12g\n", seq.total_time());
  std::fprintf(f, "index,time_s,phase_rad\n");
  for (int i = 0; i < seq.n_pulses(); ++i)
    std::fprintf(f, "%d,%.12g,%.17g\n", i + 1, seq.pulse_time(i),
                 seq.pulse_phases[i]);
  std::fclose(f);
}

PulseSequence read_sequence_csv(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "r");
  if (!f) throw std::runtime_error("cannot open " + path);
  PulseSequence seq;
  seq.label = "csv";
  char line[512];
  int lineno = 0;
  bool have_total = false, have_header = false;
  while (std::fgets(line, sizeof line, f)) {
    ++lineno;
    if (line[0] == '#') {
      double T;
      if (std::sscanf(line, "# total_time_s=%lf", &T) == 1) {
        seq.total_ticks = to_ticks(T);
        have_total = true;
      }
      continue;
    }
    if (!have_header) {
      if (std::strncmp(line, "index,time_s,phase_rad", 22) != 0) {
        std::fclose(f);
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected header index,time_s,phase_rad");
      }
      have_header = true;
      continue;
    }
    int idx;
    double t, phi;
    if (std::sscanf(line, "%d,%lf,%lf", &idx, &t, &phi) != 3) {
      std::fclose(f);
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed row");
    }
    seq.pulse_ticks.push_back(to_ticks(t));
    seq.pulse_phases.push_back(phi);
  }
  std::fclose(f);
  if (!have_total) throw std::runtime_error(path + ": missing # total_time_s=");
  seq.validate();
  return seq;
}

}  // namespace ddlab
