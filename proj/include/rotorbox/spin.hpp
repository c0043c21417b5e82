#pragma once

#include "rotorbox/types.hpp"

namespace rotorbox {

// Spin-1/2 states are 2-vectors of z-basis coefficients (up_z, down_z).
//
// Wall-axis basis convention (theta in the y-z plane, measured from z):
//   |up_z>   =  cos(t/2)|up_t> + i sin(t/2)|dn_t>
//   |dn_z>   = i sin(t/2)|up_t> +  cos(t/2)|dn_t>
// equivalently
//   |up_t>   =  cos(t/2)|up_z> - i sin(t/2)|dn_z>
//   |dn_t>   = -i sin(t/2)|up_z> +  cos(t/2)|dn_z>

namespace spin {

inline Vec2c up_z() { return {1.0, 0.0}; }
inline Vec2c down_z() { return {0.0, 1.0}; }
inline Vec2c up_x() { return Vec2c{1.0, 1.0} / std::sqrt(2.0); }
inline Vec2c down_x() { return Vec2c{1.0, -1.0} / std::sqrt(2.0); }

inline Vec2c up_theta(double theta) {
  return {std::cos(theta / 2), -kI * std::sin(theta / 2)};
}
inline Vec2c down_theta(double theta) {
  return {-kI * std::sin(theta / 2), std::cos(theta / 2)};
}

}  // namespace spin

// Matrix whose columns are |up_theta>, |down_theta> in the z basis.
// z_coeffs = spin_rotation(t) * theta_coeffs; adjoint goes the other way.
inline Mat2c spin_rotation(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2c r;
  r << c, -kI * s, -kI * s, c;
  return r;
}

}  // namespace rotorbox
