#ifndef SMALLSPHERE_OBSERVER_HPP
#define SMALLSPHERE_OBSERVER_HPP

#include <cmath>

#include "smallsphere/types.hpp"

namespace smallsphere {

/// A constant future-directed unit timelike vector T0 = (a0, -a1, -a2, -a3),
/// parameterized by its spatial part a, with a0 = sqrt(1+|a|^2).
struct Observer {
  Vec3 a{0.0, 0.0, 0.0};
  double a0 = 1.0;

  Observer() = default;
  explicit Observer(const Vec3& spatial) : a(spatial), a0(std::sqrt(1.0 + dot(spatial, spatial))) {}

  // the actual 4-vector (a0, -a)
  Vec4 vector() const { return {a0, -a[0], -a[1], -a[2]}; }
};

}  // namespace smallsphere

#endif
