#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace ddlab {

// Times are stored as integer ticks of 0.5 ns so that pulse grids like
// (i - 1/2)*tau stay exact across tens of thousands of pulses.
inline constexpr int64_t kTicksPerSecond = 2'000'000'000;

int64_t to_ticks(double seconds);  // throws if off the 0.5 ns grid
inline double to_seconds(int64_t ticks) {
  return static_cast<double>(ticks) / static_cast<double>(kTicksPerSecond);
}

struct PulseSequence {
  int64_t total_ticks = 0;
  std::vector<int64_t> pulse_ticks;   // strictly increasing, in (0, total)
  std::vector<double> pulse_phases;   // radians, same length
  std::string label;

  int n_pulses() const { return static_cast<int>(pulse_ticks.size()); }
  double total_time() const { return to_seconds(total_ticks); }
  double pulse_time(int i) const { return to_seconds(pulse_ticks[i]); }
  void validate() const;  // throws std::invalid_argument on bad structure
};

// Equally spaced pi pulses at (i-1/2)*tau, phase pi/2, total time N*tau.
PulseSequence make_cpmg(int n_pulses, double tau_s);
// Same timing grid as CPMG; phases cycle the 10-entry KDD_xy list; N % 20 == 0.
PulseSequence make_kdd_xy(int n_pulses, double tau_s);
// Single pi pulse at T/2, phase pi/2.
PulseSequence make_hahn(double total_time_s);
// No pulses.
PulseSequence make_free(double total_time_s);

// The 10-phase KDD_xy cycle (two Knill blocks, base phases 0 then pi/2).
const std::vector<double>& kdd_phase_cycle();

void write_sequence_csv(const std::string& path, const PulseSequence& seq,
                        const std::vector<std::string>& header_comments = {});
PulseSequence read_sequence_csv(const std::string& path);

}  // namespace ddlab
