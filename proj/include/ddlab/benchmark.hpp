#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ddlab/bloch.hpp"

namespace ddlab {

struct RBRun {
  std::vector<int> lengths;
  std::vector<double> survival_mean;
  std::vector<double> survival_stderr;  // across settings
  int n_settings = 0;
  int n_reps = 0;  // shots per setting; 0 = exact survival probabilities
};

// Random Clifford sequences of each length followed by the exact recovery
// gate; every gate (recovery included) is followed by the systematic error
// rotation R_z(detuning*pulse_duration) then R_x(flip_angle_error) and a
// depolarizing shrink (1 - p_dep). Survival = probability of finding the
// initial |up>. Setting s at length index li draws from stream
// (seed, li*n_settings + s): identical results at any parallelism.
RBRun rb_simulate(const std::vector<int>& lengths, const PulseErrorModel& err,
                  int n_settings, int n_reps, uint64_t seed);

// CSV `length,survival_mean,survival_stderr`
void write_rb_csv(const std::string& path, const RBRun& run,
                  const std::vector<std::string>& header_comments = {});
RBRun read_rb_csv(const std::string& path);

struct RBFit {
  double fidelity = 0.0;     // (1 + p) / 2
  double uncertainty = 0.0;  // sigma_p / 2
  double p = 0.0, A = 0.0, B = 0.0;
  bool uninformative = false;  // flat data, decay rate unidentifiable
  std::string message;
};

// Fit survival = A p^L + B. All-ones data short-circuits to fidelity exactly
// 1; flat data is flagged uninformative. Throws on non-convergence.
RBFit rb_fit(const RBRun& run);

// Noiseless evolution of |up> under systematic pulse errors only; population
// of |up> after each checkpoint pulse count (each must be a multiple of the
// family block: 20 for kdd_xy, 1 for cpmg). tau sets the grid spacing, which
// matters only for finite-duration pulses.
struct RobustnessPoint {
  int n_pulses = 0;
  double population = 0.0;
};
std::vector<RobustnessPoint> dd_robustness(const std::string& family,
                                           const std::vector<int>& checkpoints,
                                           const PulseErrorModel& err,
                                           double tau_s = 0.01);

// storage(r, duration): Bloch vector out for Bloch vector in.
using StorageChannel = std::function<Vec3(const Vec3&, double)>;

struct StateCurve {
  std::string label;
  Vec3 axis;  // preparation/measurement axis
  std::vector<double> durations;
  std::vector<double> contrasts;  // projection of the stored state on axis
};

// The six Pauli eigenstates stored for each duration and read out along the
// preparation axis.
std::vector<StateCurve> six_state_protocol(const StorageChannel& storage,
                                           const std::vector<double>& durations);

}  // namespace ddlab
