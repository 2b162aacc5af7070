#ifndef SMALLSPHERE_ENERGY_HPP
#define SMALLSPHERE_ENERGY_HPP

#include <string>

#include "smallsphere/expansion.hpp"
#include "smallsphere/observer.hpp"
#include "smallsphere/quadrature.hpp"

namespace smallsphere {

/// Coefficients of 8 pi E^(5) = A0 a^0 + A_i a^i + A_ij a^i a^j / a^0.
struct EnergyCoefficients {
  double A0 = 0.0;
  Vec3 Ai{0.0, 0.0, 0.0};
  Mat3 Aij{};
};

/// Closed forms
///   A0   = 4 pi/15 (1/6 sum Wbar_{0ijk}^2 + 1/2 sum D_ij^2)
///   A_i  = 4 pi/15 (2/3 sum D_jm Wbar_{0mij})
///   A_ij = -2 pi/45 delta_ij sum D_mn^2
EnergyCoefficients coefficients_closed_form(const CurvatureAtPoint& c);

/// E^(5) = (1/90)[ q_contract(c, t0) + sum D^2 / (2 a^0) ]; algebraically equal
/// to (1/8pi)[A0 a0 + Ai a^i + Aij a^i a^j / a0] via (a0)^2 = 1 + |a|^2.
double e5_closed_form(const CurvatureAtPoint& c, const Observer& t0);

/// Gradient and Hessian of E^(5) with respect to the spatial part a.
Vec3 e5_gradient(const CurvatureAtPoint& c, const Vec3& a);
Mat3 e5_hessian(const CurvatureAtPoint& c, const Vec3& a);

enum class MinimizeStatus { UniqueMinimum, NullVNoMinimum, ZeroCurvature };

std::string to_string(MinimizeStatus s);

struct MinimizerResult {
  Vec3 a_bar{0.0, 0.0, 0.0};
  double e5_min = 0.0;
  double gradient_norm = 0.0;
  double hessian_min_eigenvalue = 0.0;
  MinimizeStatus status = MinimizeStatus::ZeroCurvature;
  int iterations = 0;
};

/// Newton's method with Armijo backtracking from a = 0. Convergence requires
/// gradient norm <= 1e-12 max(1,|A0|) together with a small Newton step (the
/// gradient alone also decays along the null-V runaway ray); iterates passing
/// |a| > 1e6 signal the null-V case.
MinimizerResult minimize(const CurvatureAtPoint& c);

/// The three r^-5 limits of the energy expression, each by quadrature:
///  - energy component: int f (1+|grad tau|^2 + (Lap tau)^2/(|H||H0|)),
///    with int (h0^(3)-h^(3)) replaced by its assembled form
///  - reference Hamiltonian: int tau div alpha_{H0}
///  - physical Hamiltonian: int tau div alpha_H
double energy_component_limit(const CurvatureAtPoint& c, const Observer& t0, const SphereGrid& g);
double reference_hamiltonian_limit(const CurvatureAtPoint& c, const Observer& t0,
                                   const SphereGrid& g);
double physical_hamiltonian_limit(const CurvatureAtPoint& c, const Observer& t0,
                                  const SphereGrid& g);

/// (1/8pi)[energy_component + reference - physical]; agrees with
/// e5_closed_form to quadrature accuracy.
double e5_from_pieces(const CurvatureAtPoint& c, const Observer& t0, const SphereGrid& g);

}  // namespace smallsphere

#endif
