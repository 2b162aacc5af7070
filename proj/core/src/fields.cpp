#include "smallsphere/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace smallsphere {

namespace {

void require_tangent(const Direction& x, const Vec3& t) {
  if (std::abs(dot(x.x, t)) > 1e-10 || std::abs(norm(t) - 1.0) > 1e-10)
    throw std::invalid_argument("expected a unit vector tangent to S^2 at x");
}

// electric part D_ij = Wbar_{0i0j} as Mat3
Mat3 electric_of(const CurvatureAtPoint& c) {
  Mat3 d{};
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) d[i][j] = c(0, i + 1, 0, j + 1);
  return d;
}

double w0_at(const CurvatureAtPoint& c, const Vec3& x) {
  double s = 0.0;
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) s += x[i] * x[j] * c(0, i + 1, 0, j + 1);
  return s;
}

Vec3 wi_at(const CurvatureAtPoint& c, const Vec3& x) {
  Vec3 w{};
  for (int i = 0; i < 3; i++) {
    double s = 0.0;
    for (int j = 0; j < 3; j++)
      for (int k = 0; k < 3; k++) s += x[j] * x[k] * c(0, k + 1, i + 1, j + 1);
    w[i] = s;
  }
  return w;
}

Vec3 pk_at(const CurvatureAtPoint& c, const Vec3& x) {
  const Mat3 d = electric_of(c);
  const double w0 = w0_at(c, x);
  const Vec3 dx = matvec(d, x);
  return (1.0 / 15.0) * dx - (w0 / 6.0) * x;
}

// beta as Cartesian tangent vector: beta^j = -(Dx)^j + W0 X^j + W_j
Vec3 beta_cart_at(const CurvatureAtPoint& c, const Vec3& x) {
  const Mat3 d = electric_of(c);
  const Vec3 dx = matvec(d, x);
  const Vec3 w = wi_at(c, x);
  const double w0 = w0_at(c, x);
  return (-1.0) * dx + w0 * x + w;
}

Vec3 beta_bar_cart_at(const CurvatureAtPoint& c, const Vec3& x) {
  const Mat3 d = electric_of(c);
  const Vec3 dx = matvec(d, x);
  const Vec3 w = wi_at(c, x);
  const double w0 = w0_at(c, x);
  return 0.5 * ((-1.0) * dx + w0 * x - w);
}

void require_vacuum(const CurvatureAtPoint& c, const char* who) {
  if (!c.is_vacuum) throw std::invalid_argument(std::string(who) + " requires vacuum curvature");
}

}  // namespace

NullDecomposition null_decompose(const CurvatureAtPoint& c, const Direction& x, FrameGauge gauge) {
  require_vacuum(c, "null_decompose");
  const NullFrame f = frame_at(x, gauge);
  NullDecomposition d{};
  const Vec4 E[2] = {f.e4(0), f.e4(1)};
  for (int a = 0; a < 2; a++) {
    for (int b = 0; b < 2; b++) {
      d.alpha[a][b] = c.eval(E[a], f.L, E[b], f.L);
      d.alpha_bar[a][b] = c.eval(E[a], f.Lbar, E[b], f.Lbar);
    }
    d.beta[a] = c.eval(E[a], f.L, f.Lbar, f.L);
    d.beta_bar[a] = c.eval(E[a], f.Lbar, f.Lbar, f.L);
  }
  d.rho = c.eval(f.Lbar, f.L, f.Lbar, f.L);
  d.sigma = c.eval(E[0], E[1], f.Lbar, f.L) - c.eval(E[1], E[0], f.Lbar, f.L);
  return d;
}

TangentTensorField alpha_form(const CurvatureAtPoint& c) {
  return {[c](const Direction& x, const Vec3& u, const Vec3& v) {
    return c.eval(embed_spatial(u), null_L(x), embed_spatial(v), null_L(x));
  }};
}

TangentTensorField alpha_bar_form(const CurvatureAtPoint& c) {
  return {[c](const Direction& x, const Vec3& u, const Vec3& v) {
    return c.eval(embed_spatial(u), null_Lbar(x), embed_spatial(v), null_Lbar(x));
  }};
}

TangentVectorField beta_form(const CurvatureAtPoint& c) {
  return {[c](const Direction& x, const Vec3& u) {
    return c.eval(embed_spatial(u), null_L(x), null_Lbar(x), null_L(x));
  }};
}

TangentVectorField beta_bar_form(const CurvatureAtPoint& c) {
  return {[c](const Direction& x, const Vec3& u) {
    return c.eval(embed_spatial(u), null_Lbar(x), null_Lbar(x), null_L(x));
  }};
}

ScalarField rho_field(const CurvatureAtPoint& c) {
  return {[c](const Direction& x) {
    const Vec4 L = null_L(x), Lb = null_Lbar(x);
    return c.eval(Lb, L, Lb, L);
  }};
}

ScalarField sigma_field(const CurvatureAtPoint& c, FrameGauge gauge) {
  return {[c, gauge](const Direction& x) {
    const NullFrame f = frame_at(x, gauge);
    return c.eval(f.e4(0), f.e4(1), f.Lbar, f.L) - c.eval(f.e4(1), f.e4(0), f.Lbar, f.L);
  }};
}

Vector3Field beta_cartesian(const CurvatureAtPoint& c) {
  require_vacuum(c, "beta_cartesian");
  return {[c](const Direction& x) { return beta_cart_at(c, x.x); }};
}

Vector3Field beta_bar_cartesian(const CurvatureAtPoint& c) {
  require_vacuum(c, "beta_bar_cartesian");
  return {[c](const Direction& x) { return beta_bar_cart_at(c, x.x); }};
}

ScalarField alpha_sq_field(const CurvatureAtPoint& c) {
  require_vacuum(c, "alpha_sq_field");
  return {[c](const Direction& x) {
    const NullFrame f = frame_at(x);
    double s = 0.0;
    for (int a = 0; a < 2; a++)
      for (int b = 0; b < 2; b++) {
        const double v = c.eval(f.e4(a), f.L, f.e4(b), f.L);
        s += v * v;
      }
    return s;
  }};
}

ScalarField beta_sq_field(const CurvatureAtPoint& c) {
  require_vacuum(c, "beta_sq_field");
  return {[c](const Direction& x) {
    const Vec3 b = beta_cart_at(c, x.x);
    return dot(b, b);
  }};
}

ScalarField w0_field(const CurvatureAtPoint& c) {
  require_vacuum(c, "w0_field");
  return {[c](const Direction& x) { return w0_at(c, x.x); }};
}

ScalarField wi_field(const CurvatureAtPoint& c, int i) {
  require_vacuum(c, "wi_field");
  if (i < 0 || i > 2) throw std::invalid_argument("wi_field: index out of range");
  return {[c, i](const Direction& x) { return wi_at(c, x.x)[i]; }};
}

ScalarField pk_field(const CurvatureAtPoint& c, int k) {
  require_vacuum(c, "pk_field");
  if (k < 0 || k > 2) throw std::invalid_argument("pk_field: index out of range");
  return {[c, k](const Direction& x) { return pk_at(c, x.x)[k]; }};
}

Vector3Field wi_cartesian(const CurvatureAtPoint& c) {
  require_vacuum(c, "wi_cartesian");
  return {[c](const Direction& x) { return wi_at(c, x.x); }};
}

Vector3Field pk_cartesian(const CurvatureAtPoint& c) {
  require_vacuum(c, "pk_cartesian");
  return {[c](const Direction& x) { return pk_at(c, x.x); }};
}

std::pair<Matrix3Field, Vector3Field> rij_sj_fields(const CurvatureAtPoint& c) {
  require_vacuum(c, "rij_sj_fields");
  Matrix3Field rij{[c](const Direction& xd) {
    const Vec3& x = xd.x;
    const Mat3 d = electric_of(c);
    const double w0 = w0_at(c, x);
    const Vec3 w = wi_at(c, x);
    const Vec3 dx = matvec(d, x);
    Mat3 m{};
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++) {
        double xn = 0.0;
        for (int n = 0; n < 3; n++)
          xn += x[n] * (c(0, i + 1, n + 1, j + 1) + c(0, j + 1, n + 1, i + 1));
        m[i][j] = (-2.0 * d[i][j] + 2.0 * x[j] * dx[i] + 2.0 * x[i] * dx[j] -
                   w0 * x[i] * x[j] - w0 * (i == j) - xn - x[i] * w[j] - x[j] * w[i]) /
                  3.0;
      }
    return m;
  }};
  Vector3Field sj{[c](const Direction& xd) {
    return (4.0 / 3.0) * beta_cart_at(c, xd.x);
  }};
  return {std::move(rij), std::move(sj)};
}

ScalarField x0_3(const CurvatureAtPoint& c, const Observer& t0) {
  require_vacuum(c, "x0_3");
  return {[c, t0](const Direction& x) {
    return -w0_at(c, x.x) / 3.0 + dot(t0.a, pk_at(c, x.x)) / t0.a0;
  }};
}

ScalarField xi_3(const CurvatureAtPoint& c, int i) {
  require_vacuum(c, "xi_3");
  if (i < 0 || i > 2) throw std::invalid_argument("xi_3: index out of range");
  return {[c, i](const Direction& x) {
    const Vec3 b = beta_cart_at(c, x.x);
    return -b[i] / 3.0 + 0.5 * w0_at(c, x.x) * x[i];
  }};
}

Vector3Field xi3_cartesian(const CurvatureAtPoint& c) {
  require_vacuum(c, "xi3_cartesian");
  return {[c](const Direction& x) {
    const Vec3 b = beta_cart_at(c, x.x);
    return (-1.0 / 3.0) * b + (0.5 * w0_at(c, x.x)) * x.x;
  }};
}

TangentTensorField aa3_field(const CurvatureAtPoint& c) {
  require_vacuum(c, "aa3_field");
  return {[c](const Direction& x, const Vec3& u, const Vec3& v) {
    const Mat3 d = electric_of(c);
    return -0.5 * w0_at(c, x.x) * dot(u, v) - quadform(d, u, v);
  }};
}

// ---- finite differences ----

namespace {

inline double richardson(double dh, double dh2) { return (4.0 * dh2 - dh) / 3.0; }

}  // namespace

double directional_derivative(const ScalarField& f, const Direction& x, const Vec3& t, double h) {
  require_tangent(x, t);
  auto slope = [&](double hh) {
    return (f(great_circle(x, t, hh)) - f(great_circle(x, t, -hh))) / (2.0 * hh);
  };
  return richardson(slope(h), slope(h / 2.0));
}

double covariant_derivative(const TangentVectorField& f, const Direction& x, const Vec3& t,
                            const Vec3& u, double h) {
  require_tangent(x, t);
  auto g = [&](double s) { return f(great_circle(x, t, s), transported_tangent(u, x, t, s)); };
  auto slope = [&](double hh) { return (g(hh) - g(-hh)) / (2.0 * hh); };
  return richardson(slope(h), slope(h / 2.0));
}

double covariant_derivative(const TangentTensorField& f, const Direction& x, const Vec3& t,
                            const Vec3& u, const Vec3& v, double h) {
  require_tangent(x, t);
  auto g = [&](double s) {
    return f(great_circle(x, t, s), transported_tangent(u, x, t, s),
             transported_tangent(v, x, t, s));
  };
  auto slope = [&](double hh) { return (g(hh) - g(-hh)) / (2.0 * hh); };
  return richardson(slope(h), slope(h / 2.0));
}

double surface_laplacian(const ScalarField& f, const Direction& x, double h) {
  const NullFrame fr = frame_at(x);
  const double f0 = f(x);
  double total = 0.0;
  for (int a = 0; a < 2; a++) {
    const Vec3& t = fr.e(a);
    auto second = [&](double hh) {
      return (f(great_circle(x, t, hh)) - 2.0 * f0 + f(great_circle(x, t, -hh))) / (hh * hh);
    };
    total += richardson(second(h), second(h / 2.0));
  }
  return total;
}

Vec3 surface_gradient(const ScalarField& f, const Direction& x, double h) {
  const NullFrame fr = frame_at(x);
  Vec3 g{0.0, 0.0, 0.0};
  for (int a = 0; a < 2; a++) {
    const double da = directional_derivative(f, x, fr.e(a), h);
    g = g + da * fr.e(a);
  }
  return g;
}

double surface_divergence(const TangentVectorField& f, const Direction& x, double h) {
  const NullFrame fr = frame_at(x);
  double s = 0.0;
  for (int a = 0; a < 2; a++) s += covariant_derivative(f, x, fr.e(a), fr.e(a), h);
  return s;
}

double surface_divergence(const TangentTensorField& f, const Direction& x, const Vec3& u,
                          double h) {
  const NullFrame fr = frame_at(x);
  double s = 0.0;
  for (int a = 0; a < 2; a++) s += covariant_derivative(f, x, fr.e(a), fr.e(a), u, h);
  return s;
}

}  // namespace smallsphere
