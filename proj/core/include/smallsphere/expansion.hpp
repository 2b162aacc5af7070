#ifndef SMALLSPHERE_EXPANSION_HPP
#define SMALLSPHERE_EXPANSION_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "smallsphere/fields.hpp"
#include "smallsphere/quadrature.hpp"

namespace smallsphere {

/// Rank-5 array T_{m abcd}: first covariant derivative of the Weyl tensor.
struct Rank5 {
  std::vector<double> v = std::vector<double>(1024, 0.0);

  static constexpr int idx(int m, int a, int b, int c, int d) {
    return (((m * 4 + a) * 4 + b) * 4 + c) * 4 + d;
  }
  double& at(int m, int a, int b, int c, int d) { return v[idx(m, a, b, c, d)]; }
  double at(int m, int a, int b, int c, int d) const { return v[idx(m, a, b, c, d)]; }
  double max_abs() const;
  double eval(const Vec4& u0, const Vec4& u1, const Vec4& u2, const Vec4& u3,
              const Vec4& u4) const;
};

/// Rank-6 array T_{mn abcd}: second covariant derivatives, used only through
/// the L-direction contractions D^2 rho, D^2 beta, D^2 alpha.
struct Rank6 {
  std::vector<double> v = std::vector<double>(4096, 0.0);

  static constexpr int idx(int m, int n, int a, int b, int c, int d) {
    return ((((m * 4 + n) * 4 + a) * 4 + b) * 4 + c) * 4 + d;
  }
  double& at(int m, int n, int a, int b, int c, int d) { return v[idx(m, n, a, b, c, d)]; }
  double at(int m, int n, int a, int b, int c, int d) const { return v[idx(m, n, a, b, c, d)]; }
  double max_abs() const;
  double eval(const Vec4& u0, const Vec4& u1, const Vec4& u2, const Vec4& u3, const Vec4& u4,
              const Vec4& u5) const;
};

/// Bianchi-consistent curvature-derivative inputs at p, exposed through the
/// direction-dependent contractions appearing in the expansions.
struct CurvatureDerivatives {
  bool has_first = false;
  bool has_second = false;
  Rank5 dw;
  Rank6 d2w;

  double drho(const Direction& x) const;
  double dbeta(const Direction& x, const Vec3& u) const;
  double dalpha(const Direction& x, const Vec3& u, const Vec3& v) const;
  double d2rho(const Direction& x) const;
  double d2beta(const Direction& x, const Vec3& u) const;
  double d2alpha(const Direction& x, const Vec3& u, const Vec3& v) const;

  ScalarField drho_field() const;
  TangentVectorField dbeta_form() const;
  TangentTensorField dalpha_form() const;
  ScalarField d2rho_field() const;
  TangentVectorField d2beta_form() const;
  TangentTensorField d2alpha_form() const;
};

/// Orthogonal (Frobenius) projection of an arbitrary rank-5 array onto the
/// subspace with Riemann symmetries in the last four slots, vanishing traces,
/// and the second Bianchi identity over (m,a,b). Projection of a valid tensor
/// is the identity.
CurvatureDerivatives project_bianchi(const Rank5& raw);

/// As above, also attaching second derivatives: the rank-6 input is projected
/// onto symmetric-in-(m,n) arrays whose fixed-m slices are Bianchi-valid.
CurvatureDerivatives project_bianchi(const Rank5& raw, const Rank6& raw2);

/// Max absolute residual of the second Bianchi cyclic sum (diagnostic).
double second_bianchi_residual(const Rank5& t);

/// Dimensions of the valid subspaces (10 / 24 / 42 for Weyl / dW / d2W).
int valid_rank5_dimension();
int valid_rank6_dimension();

/// Expansion coefficient fields on Sigma_r in vacuum:
///   sigma^ab l_ab = -2/r + r^3 trl3 + O(r^4),          trl3 = |alpha|^2/45
///   sigma^ab n_ab = 1/r + r trn1 + r^2 trn2 + r^3 trn3 + O(r^4)
///   eta_a = r^2 eta2 + r^3 eta3 + r^4 eta4 + O(r^5)
///   |H|   = 2/r + r h1 + r^2 h2 + r^3 h3 + O(r^4),     |H0| = 2/r + r h0_1 + O(r^2)
struct VacuumSeries {
  ScalarField trl3;
  ScalarField trn1, trn2, trn3;
  TangentVectorField eta2, eta3, eta4;
  ScalarField h1, h2, h3;
  ScalarField h0_1;
  // absent derivative inputs zero the corresponding terms; these flags mark
  // trn2/eta3/h2 (first order) and trn3/eta4/h3 (second order) as partial
  bool first_order_complete = false;
  bool second_order_complete = false;
};

VacuumSeries vacuum_series(const CurvatureAtPoint& c, const CurvatureDerivatives& d);

/// Leading non-vacuum data on Sigma_r built from the full Riemann tensor:
///   sigma4 = -1/3 Rbar_{LabL} (r^4 metric coefficient)
///   h2sq   = r^0 coefficient of |H|^2 = 4 Rbar_{LLbarLLbar} + 8/3 Ric(L,Lbar)
///   div_alpha_h = r^0 coefficient of div_sigma alpha_H
struct NonVacuumData {
  TangentTensorField sigma4;
  ScalarField h2sq;
  ScalarField div_alpha_h;
};

NonVacuumData nonvacuum_data(const CurvatureAtPoint& c);

/// Pointwise residuals of the four divergence identities for D-derivatives,
/// measured with finite differences at `samples` seeded random directions.
struct DDivergenceReport {
  double div_dbeta_minus_4drho = 0.0;
  double div_dalpha_minus_5dbeta = 0.0;
  double div_d2beta_minus_5d2rho = 0.0;
  double div_d2alpha_minus_6d2beta = 0.0;
  double max_residual() const;
};

DDivergenceReport d_divergence_check(const CurvatureAtPoint& c, const CurvatureDerivatives& d,
                                     int samples = 50, std::uint64_t seed = 1);

/// Quadrature of -3/4 int W0^2 - 1/60 int |alpha|^2 + 11/45 int |beta|^2
/// (the D-derivative contributions integrate to zero and are omitted).
double k3_minus_h3_integral(const CurvatureAtPoint& c, const SphereGrid& g);

}  // namespace smallsphere

#endif
