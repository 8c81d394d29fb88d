#pragma once
#include <complex>
#include <optional>
#include <vector>

#include "ddlab/sequence.hpp"

namespace ddlab {

struct FilterValue {
  double omega = 0.0;                 // rad/s
  std::complex<double> y{0.0, 0.0};   // seconds
  double y_abs_sq = 0.0;              // seconds^2
};

// y~(omega, T) = (1/omega) sum_{j=0..N} (-1)^j [e^{i w tau_j} - e^{i w tau_j+1}]
// with tau_0 = 0, tau_{N+1} = T. omega == 0 is the analytic series limit.
FilterValue filter_y(const PulseSequence& seq, double omega);
double filter_y_abs_sq(const PulseSequence& seq, double omega);

// |y|^2 at 2*pi*freq for each frequency in Hz.
std::vector<std::pair<double, double>> notch_report(
    const PulseSequence& seq, const std::vector<double>& freqs_hz);

// Interval tau when the sequence is an equally spaced grid at (i-1/2)*tau.
std::optional<double> uniform_interval(const PulseSequence& seq);

// Closed-form |y| for the uniform grid (geometric sum), O(1) per omega.
// Falls back to the direct sum near resonant denominators. Agrees with
// filter_y to fp accuracy; used in integrals over many omega points.
double filter_y_abs_sq_uniform(int n_pulses, double tau_s, double omega);

// Main filter passband of the uniform grid: center pi/tau, first zeros at
// center +- 2*pi/T.
struct BandInfo {
  double center, lo, hi;  // rad/s
};
BandInfo main_band(int n_pulses, double tau_s);

// integral_{w_max}^{inf} |y|^2 dw estimated as (4N+2)/w_max (the mean of
// |w y|^2 over fast oscillations is 4N+2).
double filter_tail_estimate(const PulseSequence& seq, double w_max);

}  // namespace ddlab
