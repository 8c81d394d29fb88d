#include "ddlab/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace ddlab {

Mat3 axis_rotation(const Vec3& axis, double angle) {
  double n = axis.norm();
  if (!(n > 0)) throw std::invalid_argument("rotation axis must be nonzero");
  return Eigen::AngleAxisd(angle, axis / n).toRotationMatrix();
}

Mat3 z_rotation(double angle) {
  Mat3 m = Mat3::Identity();
  double c = std::cos(angle), s = std::sin(angle);
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return m;
}

Mat3 pulse_rotation(double phase, double flip_angle) {
  return axis_rotation(Vec3(std::cos(phase), std::sin(phase), 0.0), flip_angle);
}

Mat3 pulse_rotation_finite(double phase, double flip_angle, double detuning,
                           double duration) {
  if (duration <= 0.0) return pulse_rotation(phase, flip_angle);
  double rabi = flip_angle / duration;
  Vec3 v(rabi * std::cos(phase), rabi * std::sin(phase), detuning);
  double rate = v.norm();
  if (rate == 0.0) return Mat3::Identity();
  return axis_rotation(v, rate * duration);
}

void PulseErrorModel::validate() const {
  if (!(pulse_duration >= 0)) throw std::invalid_argument("pulse_duration must be >= 0");
  if (!(depolarizing_prob >= 0 && depolarizing_prob <= 1))
    throw std::invalid_argument("depolarizing_prob must be in [0,1]");
  if (!std::isfinite(flip_angle_error) || !std::isfinite(detuning))
    throw std::invalid_argument("pulse error parameters must be finite");
}

}  // namespace ddlab
