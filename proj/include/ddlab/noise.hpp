#pragma once
#include <string>
#include <vector>

namespace ddlab {

// One sinusoidal field line: beta(t) contribution beta*cos(omega*t + theta),
// theta uniform on [0, 2*pi) per realization.
struct DiscreteLine {
  double omega = 0.0;  // rad/s, > 0
  double beta = 0.0;   // rad/s peak qubit-frequency modulation, >= 0
};

// One-sided PSD of the qubit angular-frequency noise, tabulated and
// interpolated piecewise log-log-linearly (linear on segments touching
// S = 0). Zero outside the tabulated support.
class ContinuousSpectrum {
 public:
  ContinuousSpectrum() = default;
  ContinuousSpectrum(std::vector<double> omega, std::vector<double> S);

  double value(double omega) const;
  // exact integral of the interpolant over [a, b] (clipped to the support)
  double integral(double a, double b) const;
  bool empty() const { return omega_.empty(); }
  double omega_min() const { return omega_.empty() ? 0.0 : omega_.front(); }
  double omega_max() const { return omega_.empty() ? 0.0 : omega_.back(); }
  const std::vector<double>& knots() const { return omega_; }
  const std::vector<double>& values() const { return S_; }

  static ContinuousSpectrum flat(double S0, double omega_lo, double omega_hi);
  // S(w) = amplitude * (omega_ref / w)^exponent on [omega_lo, omega_hi],
  // tabulated on a dense log grid.
  static ContinuousSpectrum power_law(double amplitude, double omega_ref,
                                      double exponent, double omega_lo,
                                      double omega_hi, int points_per_decade = 64);

 private:
  std::vector<double> omega_, S_;
};

struct NoiseModel {
  std::vector<DiscreteLine> lines;
  ContinuousSpectrum continuum;
  bool empty() const { return lines.empty() && continuum.empty(); }
};

// A line (omega_k, beta_k) is equivalent to the spectral spike
// S(w) = (pi/8) beta_k^2 delta(w - omega_k) in the small-noise limit;
// this returns that integrated weight (pi/8) beta^2.
double line_spike_weight(const DiscreteLine& line);

// CSV `freq_hz,beta_rad_s`
std::vector<DiscreteLine> read_lines_csv(const std::string& path);
void write_lines_csv(const std::string& path,
                     const std::vector<DiscreteLine>& lines,
                     const std::vector<std::string>& header_comments = {});

// CSV `omega_rad_s,S_beta` with one-sided normalization comment header
ContinuousSpectrum read_spectrum_csv(const std::string& path);
void write_spectrum_csv(const std::string& path, const ContinuousSpectrum& s,
                        const std::vector<std::string>& header_comments = {});

}  // namespace ddlab
