#include "smallsphere/nonvacuum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace smallsphere {

namespace {

constexpr double kPi = std::numbers::pi;

bool dominant_energy_sample(const Mat4& t) {
  double scale = 0.0;
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++) scale = std::max(scale, std::abs(t[a][b]));
  const double tol = 1e-12 * std::max(1.0, scale);
  // energy-momentum density seen by e0 must be future-causal
  const Vec4 j{t[0][0], -t[0][1], -t[0][2], -t[0][3]};
  if (j[0] < -tol) return false;
  if (mdot(j, j) > tol) return false;
  // future-null test vectors u = e0 + n over the 26-direction net, plus e0
  std::vector<Vec4> net;
  net.push_back({1.0, 0.0, 0.0, 0.0});
  for (int ix = -1; ix <= 1; ix++)
    for (int iy = -1; iy <= 1; iy++)
      for (int iz = -1; iz <= 1; iz++) {
        if (ix == 0 && iy == 0 && iz == 0) continue;
        Vec3 n{double(ix), double(iy), double(iz)};
        n = (1.0 / norm(n)) * n;
        net.push_back({1.0, n[0], n[1], n[2]});
      }
  for (const Vec4& u : net)
    for (const Vec4& v : net) {
      double s = 0.0;
      for (int a = 0; a < 4; a++)
        for (int b = 0; b < 4; b++) s += t[a][b] * u[a] * v[b];
      if (s < -tol) return false;
    }
  return true;
}

}  // namespace

StressEnergy make_stress(const Mat4& t) {
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      if (std::abs(t[a][b] - t[b][a]) > 1e-12 * std::max(1.0, std::abs(t[a][b])))
        throw std::invalid_argument("stress-energy tensor must be symmetric");
  StressEnergy s;
  s.t = t;
  s.dominant_energy_sampled = dominant_energy_sample(t);
  return s;
}

StressEnergy stress_from_curvature(const CurvatureAtPoint& c) {
  const Mat4 ric = ricci(c);
  const double rs = scalar_curvature(c);
  Mat4 t{};
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++) {
      const double g = (a == b) ? kEta[a] : 0.0;
      t[a][b] = (ric[a][b] - 0.5 * rs * g) / (8.0 * kPi);
    }
  return make_stress(t);
}

double limit_energy(const StressEnergy& t, const Observer& t0) {
  double s = t(0, 0) * t0.a0;
  for (int i = 0; i < 3; i++) s -= t(0, i + 1) * t0.a[i];
  return 4.0 * kPi / 3.0 * s;
}

Vec3 momentum_components(const CurvatureAtPoint& c, const SphereGrid& g) {
  const NonVacuumData data = nonvacuum_data(c);
  Vec3 p;
  for (int i = 0; i < 3; i++)
    p[i] = integrate_fn([&, i](const Direction& x) { return x[i] * data.div_alpha_h(x); }, g) /
           (8.0 * kPi);
  return p;
}

MinEnergyResult min_energy_over_observers(const StressEnergy& t) {
  const Vec4 v{t(0, 0), -t(0, 1), -t(0, 2), -t(0, 3)};
  const CausalVector cv = classify_causal(v);
  if (cv.cls != CausalClass::TimelikeFuture)
    throw std::domain_error("min_energy_over_observers: T(e0,.) dual vector is " +
                            to_string(cv.cls) + ", not future timelike");
  const double m = std::sqrt(-mdot(v, v));
  // T0 = V/m = (a0, -a) hence a = -V_spatial/m
  const Observer obs(Vec3{-v[1] / m, -v[2] / m, -v[3] / m});
  return {obs, 4.0 * kPi / 3.0 * m};
}

}  // namespace smallsphere
