#include "ddlab/ion.hpp"

#include <cmath>

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;
}

double qubit_splitting_hz(double b_gauss) {
  if (!std::isfinite(b_gauss)) throw std::invalid_argument("field must be finite");
  return kHyperfineHz + kZeemanHzPerG2 * b_gauss * b_gauss;
}

BetaSensitivity beta_sensitivity(const FieldConfig& cfg) {
  if (!std::isfinite(cfg.bx_g) || !std::isfinite(cfg.by_g) || !std::isfinite(cfg.bz_g))
    throw std::invalid_argument("field must be finite");
  BetaSensitivity s;
  s.linear_x = 2 * kPi * 2 * kZeemanHzPerG2 * cfg.bx_g;
  s.linear_y = 2 * kPi * 2 * kZeemanHzPerG2 * cfg.by_g;
  s.linear_z = 2 * kPi * 2 * kZeemanHzPerG2 * cfg.bz_g;
  s.quadratic = 2 * kPi * kZeemanHzPerG2;
  return s;
}

ScatteringResult scattering_rate(const ScatteringParams& p) {
  if (!p.convention)
    throw std::invalid_argument("scattering frequency convention must be declared");
  if (!(p.gamma > 0) || !(p.delta_d1 > 0) || !(p.delta_fs > 0) ||
      !(p.intensity_ratio > 0))
    throw std::invalid_argument("scattering parameters must be positive");
  double g = 0.5 * p.gamma * std::sqrt(p.intensity_ratio / 2.0);
  double rate = g * g * p.gamma / 6.0 *
                (1.0 / (p.delta_d1 * p.delta_d1) +
                 2.0 / ((p.delta_d1 + p.delta_fs) * (p.delta_d1 + p.delta_fs)));
  return {rate, *p.convention};
}

double gaussian_peak_intensity(double power_w, double waist_m) {
  if (!(power_w >= 0) || !(waist_m > 0))
    throw std::invalid_argument("need power >= 0 and waist > 0");
  return 2.0 * power_w / (kPi * waist_m * waist_m);
}

}  // namespace ddlab
