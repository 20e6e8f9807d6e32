#pragma once

#include <cmath>

namespace cradon {

// Point / direction in 2D or 3D. 2D values keep z == 0.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Counterclockwise rotation in the xy-plane.
inline Vec3 rotate2d(const Vec3& a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y, a.z};
}

inline Vec3 unit2d(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

// Azimuth theta, polar phi: (sin phi cos theta, sin phi sin theta, cos phi).
inline Vec3 unit3d(double theta, double phi) {
  const double sp = std::sin(phi);
  return {sp * std::cos(theta), sp * std::sin(theta), std::cos(phi)};
}

}  // namespace cradon
