#pragma once
#include <optional>
#include <stdexcept>

namespace ddlab {

// hyperfine splitting = kHyperfineHz + kZeemanHzPerG2 * B^2 (B in Gauss)
inline constexpr double kHyperfineHz = 12642812118.0;
inline constexpr double kZeemanHzPerG2 = 310.8;

double qubit_splitting_hz(double b_gauss);

struct FieldConfig {
  double bx_g = 0.0, by_g = 0.0, bz_g = 0.0;  // mean field, Gauss
};

// First/second-order response of the qubit angular frequency to field
// fluctuations b(t) about the mean: beta = sum_a linear_a * b_a + quadratic *
// (bx^2 + by^2 + bz^2), all in rad/s with b in Gauss.
struct BetaSensitivity {
  double linear_x = 0.0, linear_y = 0.0, linear_z = 0.0;  // rad/s per G
  double quadratic = 0.0;                                 // rad/s per G^2
};
BetaSensitivity beta_sensitivity(const FieldConfig& cfg);

// Raman scattering rate off far-detuned light:
//   rate = g^2 Gamma / 6 * (1/delta_d1^2 + 2/(delta_d1 + delta_fs)^2),
//   g = (Gamma/2) sqrt(intensity_ratio / 2).
// All frequencies must share one declared convention; the result carries it.
enum class FreqConvention { kAngularRadPerS, kCyclicHz };

struct ScatteringParams {
  double gamma = 0.0;            // natural linewidth
  double delta_d1 = 0.0;         // detuning from the D1 line
  double delta_fs = 0.0;         // fine-structure splitting
  double intensity_ratio = 0.0;  // I / I_sat (normative)
  std::optional<FreqConvention> convention;
  std::optional<double> power_w;  // informational when intensity_ratio given
  std::optional<double> waist_m;
};

struct ScatteringResult {
  double rate = 0.0;  // same units as the inputs
  FreqConvention convention;
};
ScatteringResult scattering_rate(const ScatteringParams& p);

// Gaussian-beam peak intensity 2P/(pi w^2), W/m^2.
double gaussian_peak_intensity(double power_w, double waist_m);

}  // namespace ddlab
