#ifndef SMALLSPHERE_CURVATURE_HPP
#define SMALLSPHERE_CURVATURE_HPP

#include <array>
#include <string>

#include "smallsphere/observer.hpp"
#include "smallsphere/types.hpp"

namespace smallsphere {

/// Dense rank-4 tensor of frame components T_{abcd}, indices 0..3.
struct Rank4 {
  std::array<double, 256> v{};

  static constexpr int idx(int a, int b, int c, int d) { return ((a * 4 + b) * 4 + c) * 4 + d; }
  double& operator()(int a, int b, int c, int d) { return v[idx(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return v[idx(a, b, c, d)]; }

  double max_abs() const;
  // multilinear evaluation on four vectors (components in the orthonormal frame)
  double eval(const Vec4& p, const Vec4& q, const Vec4& r, const Vec4& s) const;
};

/// Full Riemann tensor at p in a normal orthonormal frame, metric diag(-1,1,1,1).
/// Constructed through validate_riemann (or the helpers below), so the symmetries hold.
struct CurvatureAtPoint {
  Rank4 riemann;
  bool is_vacuum = true;

  double operator()(int a, int b, int c, int d) const { return riemann(a, b, c, d); }
  double eval(const Vec4& p, const Vec4& q, const Vec4& r, const Vec4& s) const {
    return riemann.eval(p, q, r, s);
  }
  double max_abs() const { return riemann.max_abs(); }
};

/// Electric and magnetic parts of a vacuum Weyl tensor:
/// D_mn = Wbar_{0m0n},  Wbar_{0ijk} = eps^{jkn} E_in.
struct ElectricMagneticParts {
  Mat3 D{};
  Mat3 E{};
};

struct BelRobinsonTensor {
  Rank4 q;
  double eval(const Vec4& p, const Vec4& r, const Vec4& s, const Vec4& t) const {
    return q.eval(p, r, s, t);
  }
};

enum class CausalClass { TimelikeFuture, NullFuture, Spacelike, Zero };

std::string to_string(CausalClass c);

struct CausalVector {
  Vec4 components{};
  CausalClass cls = CausalClass::Zero;

  double lorentz_norm2() const { return mdot(components, components); }
};

/// Classify with a null band |<v,v>| <= 1e-12 * max(1, v0^2).
CausalVector classify_causal(const Vec4& v);

/// Validates all Riemann symmetries (antisymmetry of both pairs, pair symmetry,
/// first Bianchi) within 1e-12 * max|R| and computes the vacuum flag from the
/// Ricci contractions. Throws std::invalid_argument naming the violated identity.
CurvatureAtPoint validate_riemann(const Rank4& raw);

/// Ricci contraction Ric_bd = g^{ac} R_{abcd} and scalar curvature.
Mat4 ricci(const CurvatureAtPoint& c);
double scalar_curvature(const CurvatureAtPoint& c);

/// The unique vacuum Weyl tensor with the given electric/magnetic parts.
/// The purely spatial block is W_ijkl = d_ik D_jl + d_jl D_ik - d_il D_jk - d_jk D_il;
/// trace-freeness is verified as a post-condition. Throws on non-symmetric or
/// non-traceless inputs (tolerance 1e-14 * scale).
CurvatureAtPoint weyl_from_electric_magnetic(const ElectricMagneticParts& parts);

/// Inverse extraction; requires is_vacuum.
ElectricMagneticParts electric_magnetic_from_weyl(const CurvatureAtPoint& c);

/// Zero-Weyl curvature with prescribed (symmetric) Ricci tensor.
CurvatureAtPoint curvature_from_ricci(const Mat4& ric);

/// Bel-Robinson tensor
///   Q_{mnab} = W^r_m{}^s_a W_{rnsb} + W^r_m{}^s_b W_{rnsa} - 1/2 g_mn W_a^{rst} W_{brst},
/// indices raised with diag(-1,1,1,1). Requires is_vacuum.
BelRobinsonTensor bel_robinson(const CurvatureAtPoint& c);

/// The component formula
///   (1/2 sum Wbar_{0kmn}^2 + sum Wbar_{0m0n}^2) a^0 + 2 sum Wbar_{0m0n} Wbar_{0min} a^i.
/// Equals the Bel-Robinson components Q_{000mu} paired against (a0, +a^i); see v_vector.
double q_contract(const CurvatureAtPoint& c, const Observer& t0);

/// V = (1/2 sum Wbar_{0kmn}^2 + sum Wbar_{0m0n}^2, 2 sum Wbar_{0m0n} Wbar_{0min}),
/// future directed and non-spacelike for every vacuum Weyl tensor.
CausalVector v_vector(const CurvatureAtPoint& c);

}  // namespace smallsphere

#endif
