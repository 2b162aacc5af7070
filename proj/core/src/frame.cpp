#include "smallsphere/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace smallsphere {

Direction::Direction(const Vec3& v) : x(v) {
  if (std::abs(norm(v) - 1.0) > 1e-12)
    throw std::invalid_argument("Direction: vector is not unit length");
}

Direction Direction::normalized(const Vec3& v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("Direction: cannot normalize zero vector");
  Direction d;
  d.x = (1.0 / n) * v;
  return d;
}

namespace {

// rotation taking unit vector from -> to along the shortest arc (Rodrigues)
Vec3 rotate_to(const Vec3& from, const Vec3& to, const Vec3& u) {
  const double c = dot(from, to);
  if (c < -1.0 + 1e-12) {
    // antipodal: fall back to a half-turn about a fixed axis orthogonal to `from`
    Vec3 axis = std::abs(from[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    axis = axis - dot(axis, from) * from;
    axis = (1.0 / norm(axis)) * axis;
    return 2.0 * dot(axis, u) * axis - u;
  }
  const Vec3 w = cross(from, to);
  return u + cross(w, u) + (1.0 / (1.0 + c)) * cross(w, cross(w, u));
}

}  // namespace

NullFrame frame_at(const Direction& x, FrameGauge gauge) {
  Vec3 pole, b1, b2;
  if (gauge == FrameGauge::NorthPole) {
    pole = {0.0, 0.0, 1.0};
    b1 = {1.0, 0.0, 0.0};
    b2 = {0.0, 1.0, 0.0};
  } else {
    pole = {1.0, 0.0, 0.0};
    b1 = {0.0, 1.0, 0.0};
    b2 = {0.0, 0.0, 1.0};
  }
  NullFrame f;
  f.L = null_L(x);
  f.Lbar = null_Lbar(x);
  f.e1 = rotate_to(pole, x.x, b1);
  f.e2 = rotate_to(pole, x.x, b2);
  return f;
}

Vec3 transported_tangent(const Vec3& u, const Direction& x, const Vec3& t, double s) {
  const Vec3 m = cross(x.x, t);
  const double ut = dot(u, t);
  const double um = dot(u, m);
  const Vec3 ts = (-std::sin(s)) * x.x + std::cos(s) * t;
  return ut * ts + um * m;
}

Direction great_circle(const Direction& x, const Vec3& t, double s) {
  Direction d;
  d.x = std::cos(s) * x.x + std::sin(s) * t;
  return d;
}

}  // namespace smallsphere
