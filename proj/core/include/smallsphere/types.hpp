#ifndef SMALLSPHERE_TYPES_HPP
#define SMALLSPHERE_TYPES_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace smallsphere {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Mat3 = std::array<Vec3, 3>;
using Mat4 = std::array<Vec4, 4>;

// frame metric diag(-1,+1,+1,+1)
inline constexpr std::array<double, 4> kEta = {-1.0, 1.0, 1.0, 1.0};

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

// Minkowski inner product <u,v> = -u0 v0 + u.v
inline double mdot(const Vec4& a, const Vec4& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline Vec4 embed_spatial(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }

inline Vec3 matvec(const Mat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}
inline double quadform(const Mat3& m, const Vec3& u, const Vec3& v) {
  return dot(u, matvec(m, v));
}
inline double trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }
inline double frob2(const Mat3& m) {
  double s = 0.0;
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) s += m[i][j] * m[i][j];
  return s;
}

// spatial Levi-Civita with eps_123 = +1 (0-based arguments)
inline double eps3(int i, int j, int k) {
  return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
}

// Deterministic pairwise summation; the summation order is fixed by the input order.
double pairwise_sum(std::span<const double> v);

}  // namespace smallsphere

#endif
