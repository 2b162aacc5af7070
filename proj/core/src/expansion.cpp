#include "smallsphere/expansion.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "smallsphere/random.hpp"

namespace smallsphere {

double Rank5::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double Rank6::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double Rank5::eval(const Vec4& u0, const Vec4& u1, const Vec4& u2, const Vec4& u3,
                   const Vec4& u4) const {
  double s = 0.0;
  for (int m = 0; m < 4; m++) {
    if (u0[m] == 0.0) continue;
    for (int a = 0; a < 4; a++) {
      if (u1[a] == 0.0) continue;
      for (int b = 0; b < 4; b++) {
        if (u2[b] == 0.0) continue;
        double p = 0.0;
        for (int c = 0; c < 4; c++)
          for (int d = 0; d < 4; d++) p += at(m, a, b, c, d) * u3[c] * u4[d];
        s += u0[m] * u1[a] * u2[b] * p;
      }
    }
  }
  return s;
}

double Rank6::eval(const Vec4& u0, const Vec4& u1, const Vec4& u2, const Vec4& u3, const Vec4& u4,
                   const Vec4& u5) const {
  double s = 0.0;
  for (int m = 0; m < 4; m++) {
    if (u0[m] == 0.0) continue;
    for (int n = 0; n < 4; n++) {
      if (u1[n] == 0.0) continue;
      for (int a = 0; a < 4; a++) {
        if (u2[a] == 0.0) continue;
        for (int b = 0; b < 4; b++) {
          if (u3[b] == 0.0) continue;
          double p = 0.0;
          for (int c = 0; c < 4; c++)
            for (int d = 0; d < 4; d++) p += at(m, n, a, b, c, d) * u4[c] * u5[d];
          s += u0[m] * u1[n] * u2[a] * u3[b] * p;
        }
      }
    }
  }
  return s;
}

namespace {

constexpr double kRankThreshold = 1e-10;

// Orthonormal basis (Frobenius) of the 10-dimensional space of tensors with
// all Weyl symmetries, built from the (D,E) parameterization.
std::vector<Rank4> weyl_basis() {
  std::vector<Mat3> sym;
  sym.push_back({Vec3{1, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, -1}});
  sym.push_back({Vec3{0, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, -1}});
  sym.push_back({Vec3{0, 1, 0}, Vec3{1, 0, 0}, Vec3{0, 0, 0}});
  sym.push_back({Vec3{0, 0, 1}, Vec3{0, 0, 0}, Vec3{1, 0, 0}});
  sym.push_back({Vec3{0, 0, 0}, Vec3{0, 0, 1}, Vec3{0, 1, 0}});
  std::vector<Rank4> basis;
  for (int which = 0; which < 2; which++)
    for (const Mat3& m : sym) {
      ElectricMagneticParts p;
      (which == 0 ? p.D : p.E) = m;
      basis.push_back(weyl_from_electric_magnetic(p).riemann);
    }
  // Gram-Schmidt in R^256
  for (std::size_t i = 0; i < basis.size(); i++) {
    for (std::size_t j = 0; j < i; j++) {
      double d = 0.0;
      for (int k = 0; k < 256; k++) d += basis[i].v[k] * basis[j].v[k];
      for (int k = 0; k < 256; k++) basis[i].v[k] -= d * basis[j].v[k];
    }
    double n2 = 0.0;
    for (int k = 0; k < 256; k++) n2 += basis[i].v[k] * basis[i].v[k];
    const double inv = 1.0 / std::sqrt(n2);
    for (int k = 0; k < 256; k++) basis[i].v[k] *= inv;
  }
  return basis;
}

struct Bases {
  std::vector<Rank5> rank5;  // orthonormal basis of the valid dW space
  std::vector<Rank6> rank6;  // orthonormal basis of the valid d2W space
};

Bases build_bases() {
  const std::vector<Rank4> w4 = weyl_basis();
  const int nw = static_cast<int>(w4.size());

  // ambient rank-5 coordinates: (mu, k) -> tensor with slice mu = w4[k]
  const int na5 = 4 * nw;
  // second Bianchi rows: cyclic sum over (e,a,b) for every component
  Eigen::MatrixXd C(1024, na5);
  C.setZero();
  int row = 0;
  for (int e = 0; e < 4; e++)
    for (int a = 0; a < 4; a++)
      for (int b = 0; b < 4; b++)
        for (int c = 0; c < 4; c++)
          for (int d = 0; d < 4; d++) {
            for (int k = 0; k < nw; k++) {
              C(row, e * nw + k) += w4[k](a, b, c, d);
              C(row, a * nw + k) += w4[k](b, e, c, d);
              C(row, b * nw + k) += w4[k](e, a, c, d);
            }
            row++;
          }
  const Eigen::MatrixXd N = C.transpose() * C;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(N);
  const double lmax = es.eigenvalues().maxCoeff();
  Bases out;
  for (int i = 0; i < na5; i++) {
    if (es.eigenvalues()(i) > kRankThreshold * lmax) continue;
    Rank5 t;
    for (int mu = 0; mu < 4; mu++)
      for (int k = 0; k < nw; k++) {
        const double coef = es.eigenvectors()(mu * nw + k, i);
        if (coef == 0.0) continue;
        for (int j = 0; j < 256; j++) t.v[mu * 256 + j] += coef * w4[k].v[j];
      }
    out.rank5.push_back(std::move(t));
  }

  // ambient rank-6 coordinates: (mu, n) -> tensor with slice mu = rank5 basis n
  const int n5 = static_cast<int>(out.rank5.size());
  const int na6 = 4 * n5;
  Eigen::MatrixXd C6(6 * 256, na6);
  C6.setZero();
  row = 0;
  for (int m = 0; m < 4; m++)
    for (int n = m + 1; n < 4; n++)
      for (int j = 0; j < 256; j++) {
        // T6[m][n][abcd] - T6[n][m][abcd] = 0
        for (int k = 0; k < n5; k++) {
          C6(row, m * n5 + k) += out.rank5[k].v[n * 256 + j];
          C6(row, n * n5 + k) -= out.rank5[k].v[m * 256 + j];
        }
        row++;
      }
  const Eigen::MatrixXd N6 = C6.transpose() * C6;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es6(N6);
  const double lmax6 = es6.eigenvalues().maxCoeff();
  for (int i = 0; i < na6; i++) {
    if (es6.eigenvalues()(i) > kRankThreshold * lmax6) continue;
    Rank6 t;
    for (int mu = 0; mu < 4; mu++)
      for (int k = 0; k < n5; k++) {
        const double coef = es6.eigenvectors()(mu * n5 + k, i);
        if (coef == 0.0) continue;
        for (int j = 0; j < 1024; j++) t.v[mu * 1024 + j] += coef * out.rank5[k].v[j];
      }
    out.rank6.push_back(std::move(t));
  }
  return out;
}

const Bases& bases() {
  static const Bases b = build_bases();
  return b;
}

Rank5 project5(const Rank5& raw) {
  Rank5 out;
  for (const Rank5& e : bases().rank5) {
    double coef = 0.0;
    for (int i = 0; i < 1024; i++) coef += e.v[i] * raw.v[i];
    for (int i = 0; i < 1024; i++) out.v[i] += coef * e.v[i];
  }
  return out;
}

Rank6 project6(const Rank6& raw) {
  Rank6 out;
  for (const Rank6& e : bases().rank6) {
    double coef = 0.0;
    for (int i = 0; i < 4096; i++) coef += e.v[i] * raw.v[i];
    for (int i = 0; i < 4096; i++) out.v[i] += coef * e.v[i];
  }
  return out;
}

}  // namespace

int valid_rank5_dimension() { return static_cast<int>(bases().rank5.size()); }
int valid_rank6_dimension() { return static_cast<int>(bases().rank6.size()); }

double second_bianchi_residual(const Rank5& t) {
  double r = 0.0;
  for (int e = 0; e < 4; e++)
    for (int a = 0; a < 4; a++)
      for (int b = 0; b < 4; b++)
        for (int c = 0; c < 4; c++)
          for (int d = 0; d < 4; d++)
            r = std::max(r, std::abs(t.at(e, a, b, c, d) + t.at(a, b, e, c, d) +
                                     t.at(b, e, a, c, d)));
  return r;
}

CurvatureDerivatives project_bianchi(const Rank5& raw) {
  CurvatureDerivatives d;
  d.dw = project5(raw);
  d.has_first = true;
  return d;
}

CurvatureDerivatives project_bianchi(const Rank5& raw, const Rank6& raw2) {
  CurvatureDerivatives d = project_bianchi(raw);
  d.d2w = project6(raw2);
  d.has_second = true;
  return d;
}

double CurvatureDerivatives::drho(const Direction& x) const {
  if (!has_first) return 0.0;
  const Vec4 L = null_L(x), Lb = null_Lbar(x);
  return dw.eval(L, Lb, L, Lb, L);
}

double CurvatureDerivatives::dbeta(const Direction& x, const Vec3& u) const {
  if (!has_first) return 0.0;
  const Vec4 L = null_L(x), Lb = null_Lbar(x);
  return dw.eval(L, embed_spatial(u), L, Lb, L);
}

double CurvatureDerivatives::dalpha(const Direction& x, const Vec3& u, const Vec3& v) const {
  if (!has_first) return 0.0;
  const Vec4 L = null_L(x);
  return dw.eval(L, embed_spatial(u), L, embed_spatial(v), L);
}

double CurvatureDerivatives::d2rho(const Direction& x) const {
  if (!has_second) return 0.0;
  const Vec4 L = null_L(x), Lb = null_Lbar(x);
  return d2w.eval(L, L, Lb, L, Lb, L);
}

double CurvatureDerivatives::d2beta(const Direction& x, const Vec3& u) const {
  if (!has_second) return 0.0;
  const Vec4 L = null_L(x), Lb = null_Lbar(x);
  return d2w.eval(L, L, embed_spatial(u), L, Lb, L);
}

double CurvatureDerivatives::d2alpha(const Direction& x, const Vec3& u, const Vec3& v) const {
  if (!has_second) return 0.0;
  const Vec4 L = null_L(x);
  return d2w.eval(L, L, embed_spatial(u), L, embed_spatial(v), L);
}

ScalarField CurvatureDerivatives::drho_field() const {
  auto self = *this;
  return {[self](const Direction& x) { return self.drho(x); }};
}
TangentVectorField CurvatureDerivatives::dbeta_form() const {
  auto self = *this;
  return {[self](const Direction& x, const Vec3& u) { return self.dbeta(x, u); }};
}
TangentTensorField CurvatureDerivatives::dalpha_form() const {
  auto self = *this;
  return {[self](const Direction& x, const Vec3& u, const Vec3& v) { return self.dalpha(x, u, v); }};
}
ScalarField CurvatureDerivatives::d2rho_field() const {
  auto self = *this;
  return {[self](const Direction& x) { return self.d2rho(x); }};
}
TangentVectorField CurvatureDerivatives::d2beta_form() const {
  auto self = *this;
  return {[self](const Direction& x, const Vec3& u) { return self.d2beta(x, u); }};
}
TangentTensorField CurvatureDerivatives::d2alpha_form() const {
  auto self = *this;
  return {[self](const Direction& x, const Vec3& u, const Vec3& v) {
    return self.d2alpha(x, u, v);
  }};
}

VacuumSeries vacuum_series(const CurvatureAtPoint& c, const CurvatureDerivatives& d) {
  if (!c.is_vacuum) throw std::invalid_argument("vacuum_series requires vacuum curvature");
  auto dp = std::make_shared<const CurvatureDerivatives>(d);
  VacuumSeries s;
  s.first_order_complete = d.has_first;
  s.second_order_complete = d.has_second;

  const ScalarField a2 = alpha_sq_field(c);
  const ScalarField b2 = beta_sq_field(c);
  const ScalarField rho = rho_field(c);
  const TangentTensorField al = alpha_form(c);
  const Vector3Field bcart = beta_cartesian(c);

  s.trl3 = {[a2](const Direction& x) { return a2(x) / 45.0; }};
  s.trn1 = rho;
  s.trn2 = {[dp](const Direction& x) { return 2.0 / 3.0 * dp->drho(x); }};
  s.trn3 = {[dp, a2, b2](const Direction& x) {
    return 3.0 / 8.0 * dp->d2rho(x) + a2(x) / 30.0 - 11.0 / 45.0 * b2(x);
  }};
  s.eta2 = {[c](const Direction& x, const Vec3& u) {
    return c.eval(embed_spatial(u), null_L(x), null_Lbar(x), null_L(x)) / 3.0;
  }};
  s.eta3 = {[dp](const Direction& x, const Vec3& u) { return dp->dbeta(x, u) / 4.0; }};
  s.eta4 = {[dp, al, bcart](const Direction& x, const Vec3& u) {
    return dp->d2beta(x, u) / 10.0 - al(x, u, bcart(x)) / 45.0;
  }};
  s.h1 = rho;
  s.h2 = s.trn2;
  s.h3 = {[t3 = s.trn3, a2, rho](const Direction& x) {
    const double r = rho(x);
    return t3(x) - a2(x) / 90.0 - 0.25 * r * r;
  }};
  s.h0_1 = {[rho](const Direction& x) { return 2.0 * rho(x); }};
  return s;
}

namespace {

// quadratic form on directions: c0 + c1.x + x.c2.x, with exact surface Laplacian
struct QuadForm {
  double c0 = 0.0;
  Vec3 c1{0.0, 0.0, 0.0};
  Mat3 c2{};

  double eval(const Vec3& x) const { return c0 + dot(c1, x) + quadform(c2, x, x); }
  double laplacian(const Vec3& x) const {
    return -2.0 * dot(c1, x) + 2.0 * trace(c2) - 6.0 * quadform(c2, x, x);
  }
};

}  // namespace

NonVacuumData nonvacuum_data(const CurvatureAtPoint& c) {
  const Mat4 ric = ricci(c);
  QuadForm rllb;  // Rbar(L,Lbar,L,Lbar) = x_i x_j R_{0i0j}
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) rllb.c2[i][j] = c(0, i + 1, 0, j + 1);
  QuadForm ricLL;  // Ric(L,L)
  ricLL.c0 = ric[0][0];
  for (int i = 0; i < 3; i++) {
    ricLL.c1[i] = 2.0 * ric[0][i + 1];
    for (int j = 0; j < 3; j++) ricLL.c2[i][j] = ric[i + 1][j + 1];
  }
  QuadForm ricLLb;  // Ric(L,Lbar) = (Ric_00 - Ric_ij x_i x_j)/2
  ricLLb.c0 = 0.5 * ric[0][0];
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) ricLLb.c2[i][j] = -0.5 * ric[i + 1][j + 1];

  NonVacuumData out;
  out.sigma4 = {[c](const Direction& x, const Vec3& u, const Vec3& v) {
    return -c.eval(null_L(x), embed_spatial(u), embed_spatial(v), null_L(x)) / 3.0;
  }};
  out.h2sq = {[rllb, ricLLb](const Direction& x) {
    return 4.0 * rllb.eval(x.x) + 8.0 / 3.0 * ricLLb.eval(x.x);
  }};
  out.div_alpha_h = {[rllb, ricLL, ricLLb](const Direction& x) {
    const double lap = 0.5 * rllb.laplacian(x.x) + ricLL.laplacian(x.x) / 6.0 +
                       ricLLb.laplacian(x.x) / 3.0;
    return lap - rllb.eval(x.x) - ricLLb.eval(x.x) / 3.0 - ricLL.eval(x.x) / 6.0;
  }};
  return out;
}

double DDivergenceReport::max_residual() const {
  return std::max(std::max(div_dbeta_minus_4drho, div_dalpha_minus_5dbeta),
                  std::max(div_d2beta_minus_5d2rho, div_d2alpha_minus_6d2beta));
}

DDivergenceReport d_divergence_check(const CurvatureAtPoint& c, const CurvatureDerivatives& d,
                                     int samples, std::uint64_t seed) {
  if (!c.is_vacuum) throw std::invalid_argument("d_divergence_check requires vacuum curvature");
  DDivergenceReport rep;
  Rng rng(seed);
  const TangentVectorField db = d.dbeta_form();
  const TangentTensorField da = d.dalpha_form();
  const TangentVectorField d2b = d.d2beta_form();
  const TangentTensorField d2a = d.d2alpha_form();
  for (int s = 0; s < samples; s++) {
    const Direction x = rng.direction();
    const NullFrame f = frame_at(x);
    if (d.has_first) {
      rep.div_dbeta_minus_4drho = std::max(
          rep.div_dbeta_minus_4drho, std::abs(surface_divergence(db, x) - 4.0 * d.drho(x)));
      for (int b = 0; b < 2; b++)
        rep.div_dalpha_minus_5dbeta =
            std::max(rep.div_dalpha_minus_5dbeta,
                     std::abs(surface_divergence(da, x, f.e(b)) - 5.0 * d.dbeta(x, f.e(b))));
    }
    if (d.has_second) {
      rep.div_d2beta_minus_5d2rho = std::max(
          rep.div_d2beta_minus_5d2rho, std::abs(surface_divergence(d2b, x) - 5.0 * d.d2rho(x)));
      for (int b = 0; b < 2; b++)
        rep.div_d2alpha_minus_6d2beta =
            std::max(rep.div_d2alpha_minus_6d2beta,
                     std::abs(surface_divergence(d2a, x, f.e(b)) - 6.0 * d.d2beta(x, f.e(b))));
    }
  }
  return rep;
}

double k3_minus_h3_integral(const CurvatureAtPoint& c, const SphereGrid& g) {
  if (!c.is_vacuum) throw std::invalid_argument("k3_minus_h3_integral requires vacuum curvature");
  const double w0sq = integrate_fn(
      [f = w0_field(c)](const Direction& x) {
        const double v = f(x);
        return v * v;
      },
      g);
  const double a2 = integrate(alpha_sq_field(c), g);
  const double b2 = integrate(beta_sq_field(c), g);
  return -0.75 * w0sq - a2 / 60.0 + 11.0 / 45.0 * b2;
}

}  // namespace smallsphere
