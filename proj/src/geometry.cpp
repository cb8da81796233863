#include "ustokes/geometry.hpp"

namespace ustokes {

Vec3 to_cartesian(const Spherical& p) {
  const double s = std::sin(p.theta);
  return {p.r * s * std::cos(p.phi), p.r * s * std::sin(p.phi), p.r * std::cos(p.theta)};
}

Spherical to_spherical(const Vec3& x) {
  const double rho = std::hypot(x.x, x.y);
  return {std::hypot(rho, x.z), std::atan2(rho, x.z), std::atan2(x.y, x.x)};
}

SphericalFrame SphericalFrame::at(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  return {{st * cp, st * sp, ct}, {ct * cp, ct * sp, -st}, {-sp, cp, 0.0}};
}

}  // namespace ustokes
