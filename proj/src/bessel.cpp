#include "ddlab/bessel.hpp"

#include <cmath>

namespace ddlab {

namespace {
constexpr double kPi = 3.141592653589793238462643;

// J_nu(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)], chi = x - nu*pi/2 - pi/4,
// with P, Q the Hankel series; coefficients a_{k+1} = a_k (4nu^2-(2k+1)^2)/(8(k+1)).
// Truncated at the smallest term.
double hankel(double x, int nu) {
  double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double sign = 1.0;
  for (int k = 0; k < 40; ++k) {
    double odd = 2.0 * k + 1.0;
    double next = term * (mu - odd * odd) / (8.0 * (k + 1) * x);
    if (std::abs(next) >= std::abs(term) && k > 2) break;
    term = next;
    if (k % 2 == 0) {
      q += sign * term;
      sign = -sign;
    } else {
      p += sign * term;
    }
    if (std::abs(term) < 1e-17) break;
  }
  double chi = x - 0.5 * nu * kPi - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double series_j0(double x) {
  long double q = -static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(static_cast<double>(term)) < 1e-20 * (1.0 + std::abs(static_cast<double>(sum))))
      break;
  }
  return static_cast<double>(sum);
}

double series_j1(double x) {
  long double q = -static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (std::abs(static_cast<double>(term)) < 1e-20 * (1.0 + std::abs(static_cast<double>(sum))))
      break;
  }
  return static_cast<double>(0.5L * x * sum);
}
}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= 14.0) return series_j0(x);
  return hankel(x, 0);
}

double bessel_j1(double x) {
  double ax = std::abs(x);
  double v = ax <= 14.0 ? series_j1(ax) : hankel(ax, 1);
  return x < 0 ? -v : v;
}

double bessel_j0_inverse(double y) {
  double lo = 0.0, hi = kJ0FirstRoot;
  if (y >= 1.0) return 0.0;
  if (y <= bessel_j0(kJ0FirstRoot)) return kJ0FirstRoot;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (bessel_j0(mid) > y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ddlab
