#ifndef SMALLSPHERE_FRAME_HPP
#define SMALLSPHERE_FRAME_HPP

#include "smallsphere/types.hpp"

namespace smallsphere {

/// Unit direction on S^2 (the eigenfunction triple X~^i evaluated at a point).
struct Direction {
  Vec3 x{0.0, 0.0, 1.0};

  Direction() = default;
  explicit Direction(const Vec3& v);       // throws unless | |v|-1 | <= 1e-12
  static Direction normalized(const Vec3& v);

  double operator[](int i) const { return x[i]; }
};

/// Tangent-basis gauge. Both rotate a fixed orthonormal pair to x along the
/// shortest great circle; they differ in the reference pole, which is enough
/// for gauge-independence tests. Orientation is always e1 x e2 = x.
enum class FrameGauge { NorthPole, XAxis };

/// Null frame of the limit construction:
///   L = d/dx^0 + X~^i d/dx^i,  Lbar = (d/dx^0 - X~^i d/dx^i)/2,  e_a tangent.
/// <L,L> = <Lbar,Lbar> = 0, <L,Lbar> = -1, <e_a,e_b> = delta_ab.
struct NullFrame {
  Vec4 L{};
  Vec4 Lbar{};
  Vec3 e1{};
  Vec3 e2{};

  Vec4 e4(int a) const { return embed_spatial(a == 0 ? e1 : e2); }
  const Vec3& e(int a) const { return a == 0 ? e1 : e2; }
};

NullFrame frame_at(const Direction& x, FrameGauge gauge = FrameGauge::NorthPole);

inline Vec4 null_L(const Direction& x) { return {1.0, x[0], x[1], x[2]}; }
inline Vec4 null_Lbar(const Direction& x) { return {0.5, -0.5 * x[0], -0.5 * x[1], -0.5 * x[2]}; }

/// Parallel transport of a tangent vector u at x along the great circle with
/// initial tangent t, to arc length s. Great circles are geodesics, so the
/// transported components in the {gamma'(s), x cross t} frame are constant.
Vec3 transported_tangent(const Vec3& u, const Direction& x, const Vec3& t, double s);

/// Point of the great circle: x cos(s) + t sin(s).
Direction great_circle(const Direction& x, const Vec3& t, double s);

}  // namespace smallsphere

#endif
