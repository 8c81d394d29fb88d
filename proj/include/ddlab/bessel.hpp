#pragma once

namespace ddlab {

// Bessel functions of the first kind, absolute accuracy ~1e-12.
// Power series (long double accumulation) for |x| <= 14, Hankel asymptotic
// expansion beyond.
double bessel_j0(double x);
double bessel_j1(double x);

// Inverse of J0 on [0, first root]: returns x in [0, 2.404825...] with
// J0(x) = y for y in (j0(root), 1]; clamps y outside that range.
double bessel_j0_inverse(double y);

// First positive root of J0.
inline constexpr double kJ0FirstRoot = 2.404825557695772768621632;

}  // namespace ddlab
