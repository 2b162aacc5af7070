#ifndef SMALLSPHERE_FIELDS_HPP
#define SMALLSPHERE_FIELDS_HPP

#include <functional>
#include <utility>

#include "smallsphere/curvature.hpp"
#include "smallsphere/frame.hpp"
#include "smallsphere/observer.hpp"

namespace smallsphere {

/// Scalar function on S^2. Evaluators must be deterministic and side-effect
/// free; quadrature may evaluate them concurrently.
struct ScalarField {
  std::function<double(const Direction&)> eval;
  double operator()(const Direction& x) const { return eval(x); }
};

/// Tangent 1-form on S^2 in basis-free Cartesian pairing: value on a tangent
/// vector u at x (u.x = 0).
struct TangentVectorField {
  std::function<double(const Direction&, const Vec3&)> eval;
  double operator()(const Direction& x, const Vec3& u) const { return eval(x, u); }
};

/// Tangent symmetric 2-tensor on S^2 as a bilinear form on tangent vectors.
struct TangentTensorField {
  std::function<double(const Direction&, const Vec3&, const Vec3&)> eval;
  double operator()(const Direction& x, const Vec3& u, const Vec3& v) const {
    return eval(x, u, v);
  }
};

/// R^3-valued function on S^2 (Cartesian components).
struct Vector3Field {
  std::function<Vec3(const Direction&)> eval;
  Vec3 operator()(const Direction& x) const { return eval(x); }
};

/// 3x3-matrix-valued function on S^2.
struct Matrix3Field {
  std::function<Mat3(const Direction&)> eval;
  Mat3 operator()(const Direction& x) const { return eval(x); }
};

/// Null decomposition of the Weyl tensor at direction x, components in the
/// orthonormal tangent basis of the given gauge:
///   alpha_ab = Wbar_{aLbL}, alphabar_ab = Wbar_{aLbarbLbar},
///   beta_a = Wbar_{aLLbarL}, betabar_a = Wbar_{aLbarLbarL},
///   rho = Wbar_{LbarLLbarL}, sigma = eps^{ab} Wbar_{abLbarL}.
struct NullDecomposition {
  double alpha[2][2];
  double alpha_bar[2][2];
  double beta[2];
  double beta_bar[2];
  double rho;
  double sigma;
};

NullDecomposition null_decompose(const CurvatureAtPoint& c, const Direction& x,
                                 FrameGauge gauge = FrameGauge::NorthPole);

// ---- raw tensor forms (basis-free; used by the derivative identity checks) ----
TangentTensorField alpha_form(const CurvatureAtPoint& c);
TangentTensorField alpha_bar_form(const CurvatureAtPoint& c);
TangentVectorField beta_form(const CurvatureAtPoint& c);
TangentVectorField beta_bar_form(const CurvatureAtPoint& c);
ScalarField rho_field(const CurvatureAtPoint& c);
ScalarField sigma_field(const CurvatureAtPoint& c, FrameGauge gauge = FrameGauge::NorthPole);

/// Cartesian components of the tangent vectors dual to beta / betabar.
Vector3Field beta_cartesian(const CurvatureAtPoint& c);
Vector3Field beta_bar_cartesian(const CurvatureAtPoint& c);

ScalarField alpha_sq_field(const CurvatureAtPoint& c);  // |alpha|^2
ScalarField beta_sq_field(const CurvatureAtPoint& c);   // |beta|^2

// ---- sphere functions W_0, W_i, P_k and friends ----
ScalarField w0_field(const CurvatureAtPoint& c);              // X^i X^j Wbar_{0i0j} = rho
ScalarField wi_field(const CurvatureAtPoint& c, int i);       // X^j X^k Wbar_{0kij}
ScalarField pk_field(const CurvatureAtPoint& c, int k);       // Wbar_{0ik0...}/15 - W0 X^k/6
Vector3Field wi_cartesian(const CurvatureAtPoint& c);
Vector3Field pk_cartesian(const CurvatureAtPoint& c);

/// R_ij = -1/3 alpha^ab X^i_a X^j_b and S_j = sigma~^ab gamma^(2)c_ab X^j_c
/// = (4/3) beta^c X^j_c, both with closed-form evaluators.
std::pair<Matrix3Field, Vector3Field> rij_sj_fields(const CurvatureAtPoint& c);

/// Leading optimal-embedding coefficients:
///   X_0^(3) = -W0/3 + (a^i/a^0) P_i
///   X_i^(3) = -1/3 beta^c grad_c X^i + rho X^i / 2
ScalarField x0_3(const CurvatureAtPoint& c, const Observer& t0);
ScalarField xi_3(const CurvatureAtPoint& c, int i);
Vector3Field xi3_cartesian(const CurvatureAtPoint& c);

/// Traceless second fundamental form coefficient of the R^3 embedding:
///   AA3_ab = (X^i_a X^j_b + X^i_b X^j_a)(-W0 d_ij/4 - Wbar_{0i0j}/2).
TangentTensorField aa3_field(const CurvatureAtPoint& c);

// ---- finite-difference derivative kit (central differences along great
//      circles with one Richardson extrapolation step) ----

/// Derivative of a scalar field along the unit tangent t at x.
/// Throws if t is not tangent to S^2 at x.
double directional_derivative(const ScalarField& f, const Direction& x, const Vec3& t,
                              double h = 1e-3);

/// Covariant derivative (grad_t f)(u) of a tangent 1-form, via parallel
/// transport along the great circle.
double covariant_derivative(const TangentVectorField& f, const Direction& x, const Vec3& t,
                            const Vec3& u, double h = 1e-3);

/// Covariant derivative (grad_t f)(u,v) of a tangent 2-tensor.
double covariant_derivative(const TangentTensorField& f, const Direction& x, const Vec3& t,
                            const Vec3& u, const Vec3& v, double h = 1e-3);

/// Surface Laplacian of a scalar field (sum of second derivatives along an
/// orthonormal pair of geodesics).
double surface_laplacian(const ScalarField& f, const Direction& x, double h = 3e-3);

/// Surface gradient as a Cartesian tangent vector (assembled from directional
/// derivatives along the frame basis).
Vec3 surface_gradient(const ScalarField& f, const Direction& x, double h = 1e-3);

/// Surface divergence grad^a f_a of a tangent 1-form.
double surface_divergence(const TangentVectorField& f, const Direction& x, double h = 1e-3);

/// Tensor divergence (grad^a f_ab) paired with tangent u.
double surface_divergence(const TangentTensorField& f, const Direction& x, const Vec3& u,
                          double h = 1e-3);

}  // namespace smallsphere

#endif
