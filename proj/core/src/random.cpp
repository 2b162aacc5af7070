#include "smallsphere/random.hpp"

#include <cmath>
#include <numbers>

#include "smallsphere/expansion.hpp"

namespace smallsphere {

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

Vec3 Rng::vec3(double scale) { return {scale * normal(), scale * normal(), scale * normal()}; }

Direction Rng::direction() {
  Vec3 v;
  double n;
  do {
    v = vec3();
    n = norm(v);
  } while (n < 1e-8);
  return Direction::normalized(v);
}

Mat3 Rng::traceless_symmetric() {
  Mat3 m{};
  for (int i = 0; i < 3; i++)
    for (int j = i; j < 3; j++) m[i][j] = m[j][i] = normal();
  const double t = trace(m) / 3.0;
  for (int i = 0; i < 3; i++) m[i][i] -= t;
  return m;
}

ElectricMagneticParts random_parts(Rng& rng) {
  ElectricMagneticParts p;
  p.D = rng.traceless_symmetric();
  p.E = rng.traceless_symmetric();
  return p;
}

CurvatureAtPoint random_vacuum_weyl(Rng& rng) {
  return weyl_from_electric_magnetic(random_parts(rng));
}

CurvatureAtPoint random_curvature(Rng& rng) {
  const CurvatureAtPoint w = random_vacuum_weyl(rng);
  Mat4 ric{};
  for (int a = 0; a < 4; a++)
    for (int b = a; b < 4; b++) ric[a][b] = ric[b][a] = rng.normal();
  const CurvatureAtPoint r = curvature_from_ricci(ric);
  Rank4 sum = w.riemann;
  for (int i = 0; i < 256; i++) sum.v[i] += r.riemann.v[i];
  return validate_riemann(sum);
}

Rank5 random_rank5(Rng& rng) {
  Rank5 t;
  for (double& x : t.v) x = rng.normal();
  return t;
}

Rank6 random_rank6(Rng& rng) {
  Rank6 t;
  for (double& x : t.v) x = rng.normal();
  return t;
}

}  // namespace smallsphere
