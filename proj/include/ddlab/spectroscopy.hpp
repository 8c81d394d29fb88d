#pragma once
#include <string>
#include <utility>
#include <vector>

#include "ddlab/noise.hpp"

namespace ddlab {

struct ContrastRecord {
  int n_pulses = 0;
  double tau_s = 0.0;
  double total_time_s = 0.0;
  double contrast = 0.0;
  double stderr_ = 0.0;
};

// CSV `n_pulses,tau_s,total_time_s,contrast,stderr`
std::vector<ContrastRecord> read_scan_csv(const std::string& path);
void write_scan_csv(const std::string& path, const std::vector<ContrastRecord>& records,
                    const std::vector<std::string>& header_comments = {},
                    const std::vector<double>* analytic_column = nullptr);

// contrast divided by the zero-interval (gate-only) reference of the same
// pulse count; uncertainties combined in quadrature.
ContrastRecord normalize_contrast(const ContrastRecord& raw, double gate_reference,
                                  double gate_reference_stderr = 0.0);

struct LineFit {
  std::vector<DiscreteLine> lines;
  std::vector<double> uncertainty;  // one sigma per line amplitude
  double residual_norm = 0.0;
  std::vector<std::string> warnings;
};

// Weighted least squares of prod_k J0(beta_k |y(omega_k, T)|) over the
// records' CPMG grids; weights 1/stderr^2 (zero stderr -> median weight);
// beta initialized by single-point inversion at each candidate's most
// sensitive record. Throws on non-convergence, naming the best iterate.
LineFit fit_discrete_lines(const std::vector<ContrastRecord>& data,
                           const std::vector<double>& candidate_freqs_hz);

struct SpectrumBand {
  double omega_c = 0.0;      // rad/s, = pi/tau
  double bandwidth = 0.0;    // rad/s, 4*pi/T of the longest record merged in
  double S = 0.0;            // (rad/s)^2 / (rad/s)
  double uncertainty = 0.0;  // one sigma
};

struct SpectrumEstimate {
  std::vector<SpectrumBand> bands;  // ascending omega_c
  std::vector<std::string> warnings;
};

// Per record chi = -ln(contrast clipped to [1e-3, 1]) and S = chi/(2T) (the
// filter sum rule makes this exact for spectra flat over the band); records
// sharing a band center are merged by inverse variance. Curves are grouped by
// n_pulses; a curve is rejected when its tau values disagree or T != N*tau.
SpectrumEstimate reconstruct_spectrum(const std::vector<ContrastRecord>& curves);

// CSV `omega_c_rad_s,bandwidth_rad_s,S_beta,uncertainty`
void write_estimate_csv(const std::string& path, const SpectrumEstimate& est,
                        const std::vector<std::string>& header_comments = {});
SpectrumEstimate read_estimate_csv(const std::string& path);

// Table through the band centers, for feeding an estimate back into chi.
ContinuousSpectrum to_spectrum(const SpectrumEstimate& est);

struct IntervalScore {
  double tau_s = 0.0;
  int n_pulses = 0;
  double chi = 0.0;
  double infidelity = 0.0;   // 1 - exp(-chi)
  double pulse_cost = 0.0;   // per_pulse_error * target_T / tau
  double score = 0.0;        // infidelity + pulse_cost
  double worst_notch_rel = 0.0;
  bool feasible = false;
};

struct IntervalResult {
  double tau_opt_s = 0.0;
  std::vector<IntervalScore> table;
};

// Grid search over tau in [tau_min, tau_max] (step snapped to the pulse-time
// grid). Each tau is scored on the KDD grid with n = 20*round(target_T/(20
// tau)) pulses: score = (1 - exp(-chi)) + per_pulse_error*target_T/tau,
// feasible iff |y(2 pi f)|^2 / (2T/pi)^2 <= notch_rel_threshold at every line
// frequency. Returns the feasible minimum (ties -> larger tau); throws when
// nothing is feasible, naming the best rejected point.
IntervalResult optimize_interval(const ContinuousSpectrum& spectrum,
                                 const std::vector<double>& line_freqs_hz,
                                 double tau_min_s, double tau_max_s,
                                 double per_pulse_error, double target_T_s,
                                 double grid_step_s = 1e-3,
                                 double notch_rel_threshold = 1e-8);
IntervalResult optimize_interval(const SpectrumEstimate& estimate,
                                 const std::vector<double>& line_freqs_hz,
                                 double tau_min_s, double tau_max_s,
                                 double per_pulse_error, double target_T_s,
                                 double grid_step_s = 1e-3,
                                 double notch_rel_threshold = 1e-8);

struct T2Fit {
  double t2_s = 0.0;
  double uncertainty_s = 0.0;
  double amplitude = 0.0;
  double amplitude_uncertainty = 0.0;
  double residual_norm = 0.0;
  bool no_decay = false;
  double t2_lower_bound_s = 0.0;  // only when no_decay
  std::string message;
};

// Unweighted fit of c(T) = A exp(-T/T2) with A in (0, 1]; decay rate k less
// than twice its own sigma reports "no measurable decay" with the bound
// T2 >= 1/(k + 2 sigma_k).
T2Fit fit_coherence_time(const std::vector<std::pair<double, double>>& data);

}  // namespace ddlab
