#pragma once
#include <vector>

#include "ddlab/noise.hpp"
#include "ddlab/sequence.hpp"

namespace ddlab {

struct ChiOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_panels = 200000;
};

struct ChiResult {
  double chi = 0.0;          // decoherence exponent; predicted contrast = exp(-chi)
  double error_bound = 0.0;  // quadrature error estimate plus truncation bound
  double tail = 0.0;         // high-frequency 1/omega^2 tail bound included in chi
  double omega_cut = 0.0;    // upper integration limit used
  long n_eval = 0;
};

// Product of J0(|beta_k y(omega_k, T)|) over all lines.
double contrast_discrete(const PulseSequence& seq,
                         const std::vector<DiscreteLine>& lines);

// chi = (2/pi) * integral_0^inf S(omega) |y(omega, T)|^2 domega,
// integrated adaptively over the tabulated support up to
// omega_cut = 200*(n_pulses+1)*pi/T with an analytic tail bound beyond.
ChiResult chi_integral(const PulseSequence& seq, const ContinuousSpectrum& spectrum,
                       const ChiOptions& opt = {});

// contrast_discrete(lines) * exp(-chi_integral(continuum))
double contrast_total(const PulseSequence& seq, const NoiseModel& model,
                      const ChiOptions& opt = {});

}  // namespace ddlab
