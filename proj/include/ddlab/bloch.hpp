#pragma once
#include <Eigen/Dense>

namespace ddlab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Right-handed Bloch rotation by `angle` about `axis` (normalized inside).
Mat3 axis_rotation(const Vec3& axis, double angle);

// Bloch image of exp(-i sigma_z angle/2): x rotates toward y.
Mat3 z_rotation(double angle);

// Bloch image of the pulse propagator
//   D_phi(gamma) = exp(-i sz phi/2) exp(-i sx gamma/2) exp(+i sz phi/2):
// rotation by gamma about the equatorial axis (cos phi, sin phi, 0).
Mat3 pulse_rotation(double phase, double flip_angle);

// Square pulse of the given duration: Rabi rate flip_angle/duration along the
// phi axis with a constant detuning as simultaneous z component; the rotation
// angle is sqrt(rabi^2 + detuning^2) * duration about the tilted axis.
Mat3 pulse_rotation_finite(double phase, double flip_angle, double detuning,
                           double duration);

struct PulseErrorModel {
  double flip_angle_error = 0.0;   // rad added to pi on every pulse
  double detuning = 0.0;           // rad/s z component while a pulse is on
  double pulse_duration = 0.0;     // s; 0 = instantaneous
  double depolarizing_prob = 0.0;  // per-pulse, applied by the benchmarking layer
  void validate() const;
  bool ideal() const {
    return flip_angle_error == 0.0 && detuning == 0.0 && pulse_duration == 0.0 &&
           depolarizing_prob == 0.0;
  }
};

}  // namespace ddlab
