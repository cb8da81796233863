#pragma once

#include <cmath>

namespace ustokes {

inline constexpr double kPi = 3.14159265358979323846;

/// Cartesian 3-vector.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Spherical coordinates: theta is colatitude in [0, pi], phi is azimuth.
struct Spherical {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

Vec3 to_cartesian(const Spherical& p);
Spherical to_spherical(const Vec3& x);

/// Local orthonormal frame (r-hat, theta-hat, phi-hat) at a direction.
struct SphericalFrame {
  Vec3 e_r;
  Vec3 e_theta;
  Vec3 e_phi;

  static SphericalFrame at(double theta, double phi);

  /// Spherical components (v_r, v_theta, v_phi) to Cartesian.
  Vec3 to_cartesian(double v_r, double v_theta, double v_phi) const {
    return v_r * e_r + v_theta * e_theta + v_phi * e_phi;
  }
  Vec3 to_local(const Vec3& v) const { return {dot(v, e_r), dot(v, e_theta), dot(v, e_phi)}; }
};

}  // namespace ustokes
