#ifndef SMALLSPHERE_NONVACUUM_HPP
#define SMALLSPHERE_NONVACUUM_HPP

#include "smallsphere/expansion.hpp"
#include "smallsphere/observer.hpp"

namespace smallsphere {

/// Stress-energy tensor T_ab in the orthonormal frame, with a sampled
/// dominant-energy flag (necessary check over a 26-direction causal net,
/// not a certificate).
struct StressEnergy {
  Mat4 t{};
  bool dominant_energy_sampled = false;

  double operator()(int a, int b) const { return t[a][b]; }
};

/// T = (Ric - R g / 2) / 8 pi.
StressEnergy stress_from_curvature(const CurvatureAtPoint& c);

StressEnergy make_stress(const Mat4& t);  // validates symmetry, computes the flag

/// lim r^-3 E = (4 pi / 3) T(e0, T0) with T(e0,T0) = T_00 a^0 - T_0i a^i.
double limit_energy(const StressEnergy& t, const Observer& t0);

/// p^i = (1/8pi) int X^i div_sigma alpha_H dS^2 (leading coefficient), equal
/// to -(4 pi/3) Ric(e0,e_i)/(8 pi) = -Ric(e0,e_i)/6.
Vec3 momentum_components(const CurvatureAtPoint& c, const SphereGrid& g);

struct MinEnergyResult {
  Observer observer;
  double value = 0.0;
};

/// Minimizer of limit_energy over unit future timelike observers: T0 = V/|V|
/// with V = (T_00, -T_0i), value (4 pi/3) sqrt(-<V,V>). Throws std::domain_error
/// naming the causality failure when V is null or spacelike.
MinEnergyResult min_energy_over_observers(const StressEnergy& t);

}  // namespace smallsphere

#endif
