#include "smallsphere/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smallsphere {

double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

double Rank4::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double Rank4::eval(const Vec4& p, const Vec4& q, const Vec4& r, const Vec4& s) const {
  double total = 0.0;
  for (int a = 0; a < 4; a++) {
    if (p[a] == 0.0) continue;
    for (int b = 0; b < 4; b++) {
      if (q[b] == 0.0) continue;
      double partial = 0.0;
      for (int c = 0; c < 4; c++) {
        if (r[c] == 0.0) continue;
        for (int d = 0; d < 4; d++) partial += (*this)(a, b, c, d) * r[c] * s[d];
      }
      total += p[a] * q[b] * partial;
    }
  }
  return total;
}

std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::TimelikeFuture: return "timelike-future";
    case CausalClass::NullFuture: return "null-future";
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Zero: return "zero";
  }
  return "unknown";
}

CausalVector classify_causal(const Vec4& v) {
  CausalVector out;
  out.components = v;
  double ma = 0.0;
  for (double x : v) ma = std::max(ma, std::abs(x));
  if (ma == 0.0) {
    out.cls = CausalClass::Zero;
    return out;
  }
  const double n2 = mdot(v, v);
  const double band = 1e-12 * std::max(1.0, v[0] * v[0]);
  if (std::abs(n2) <= band) {
    if (v[0] <= 0.0) throw std::domain_error("causal vector: past-directed null vector");
    out.cls = CausalClass::NullFuture;
  } else if (n2 < 0.0) {
    if (v[0] <= 0.0) throw std::domain_error("causal vector: past-directed timelike vector");
    out.cls = CausalClass::TimelikeFuture;
  } else {
    out.cls = CausalClass::Spacelike;
  }
  return out;
}

namespace {

const char* check_symmetries(const Rank4& r, double tol) {
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      for (int c = 0; c < 4; c++)
        for (int d = 0; d < 4; d++) {
          if (std::abs(r(a, b, c, d) + r(b, a, c, d)) > tol)
            return "antisymmetry in first pair: R_abcd = -R_bacd";
          if (std::abs(r(a, b, c, d) + r(a, b, d, c)) > tol)
            return "antisymmetry in last pair: R_abcd = -R_abdc";
        }
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      for (int c = 0; c < 4; c++)
        for (int d = 0; d < 4; d++)
          if (std::abs(r(a, b, c, d) - r(c, d, a, b)) > tol)
            return "pair symmetry: R_abcd = R_cdab";
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      for (int c = 0; c < 4; c++)
        for (int d = 0; d < 4; d++) {
          const double bi = r(a, b, c, d) + r(a, c, d, b) + r(a, d, b, c);
          if (std::abs(bi) > tol) return "first Bianchi identity: R_a[bcd] = 0";
        }
  return nullptr;
}

Mat4 ricci_of(const Rank4& r) {
  Mat4 ric{};
  for (int b = 0; b < 4; b++)
    for (int d = 0; d < 4; d++) {
      double s = 0.0;
      for (int a = 0; a < 4; a++) s += kEta[a] * r(a, b, a, d);
      ric[b][d] = s;
    }
  return ric;
}

}  // namespace

CurvatureAtPoint validate_riemann(const Rank4& raw) {
  const double scale = raw.max_abs();
  const double tol = 1e-12 * std::max(scale, 1e-300);
  if (const char* what = check_symmetries(raw, tol))
    throw std::invalid_argument(std::string("riemann validation failed: ") + what);
  CurvatureAtPoint c;
  c.riemann = raw;
  const Mat4 ric = ricci_of(raw);
  double rmax = 0.0;
  for (int b = 0; b < 4; b++)
    for (int d = 0; d < 4; d++) rmax = std::max(rmax, std::abs(ric[b][d]));
  c.is_vacuum = rmax <= 1e-12 * std::max(scale, 1e-300) || scale == 0.0;
  return c;
}

Mat4 ricci(const CurvatureAtPoint& c) { return ricci_of(c.riemann); }

double scalar_curvature(const CurvatureAtPoint& c) {
  const Mat4 ric = ricci_of(c.riemann);
  double s = 0.0;
  for (int a = 0; a < 4; a++) s += kEta[a] * ric[a][a];
  return s;
}

namespace {

void require_sym_traceless(const Mat3& m, const char* name) {
  double scale = 0.0;
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) scale = std::max(scale, std::abs(m[i][j]));
  const double tol = 1e-14 * std::max(scale, 1.0);
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      if (std::abs(m[i][j] - m[j][i]) > tol)
        throw std::invalid_argument(std::string(name) + " must be symmetric");
  if (std::abs(trace(m)) > tol) throw std::invalid_argument(std::string(name) + " must be traceless");
}

}  // namespace

CurvatureAtPoint weyl_from_electric_magnetic(const ElectricMagneticParts& parts) {
  require_sym_traceless(parts.D, "D");
  require_sym_traceless(parts.E, "E");
  const Mat3& D = parts.D;
  Rank4 w;
  // Wbar_{0ijk} = eps^{jkn} E_in
  auto B = [&](int i, int j, int k) {
    double s = 0.0;
    for (int n = 0; n < 3; n++) s += eps3(j, k, n) * parts.E[i][n];
    return s;
  };
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) {
      const double d = D[i][j];
      w(0, i + 1, 0, j + 1) = d;
      w(i + 1, 0, j + 1, 0) = d;
      w(0, i + 1, j + 1, 0) = -d;
      w(i + 1, 0, 0, j + 1) = -d;
    }
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      for (int k = 0; k < 3; k++) {
        const double b = B(i, j, k);
        if (b == 0.0) continue;
        w(0, i + 1, j + 1, k + 1) += b;
        w(i + 1, 0, j + 1, k + 1) -= b;
        w(j + 1, k + 1, 0, i + 1) += b;
        w(j + 1, k + 1, i + 1, 0) -= b;
      }
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      for (int k = 0; k < 3; k++)
        for (int l = 0; l < 3; l++)
          w(i + 1, j + 1, k + 1, l + 1) = (i == k) * D[j][l] + (j == l) * D[i][k] -
                                          (i == l) * D[j][k] - (j == k) * D[i][l];
  CurvatureAtPoint c = validate_riemann(w);
  if (!c.is_vacuum)
    throw std::logic_error("weyl_from_electric_magnetic: reconstruction is not trace-free");
  return c;
}

ElectricMagneticParts electric_magnetic_from_weyl(const CurvatureAtPoint& c) {
  if (!c.is_vacuum)
    throw std::invalid_argument("electric_magnetic_from_weyl requires vacuum curvature");
  ElectricMagneticParts p;
  for (int i = 0; i < 3; i++)
    for (int n = 0; n < 3; n++) {
      p.D[i][n] = c(0, i + 1, 0, n + 1);
      double e = 0.0;
      for (int j = 0; j < 3; j++)
        for (int k = 0; k < 3; k++) e += eps3(j, k, n) * c(0, i + 1, j + 1, k + 1);
      p.E[i][n] = 0.5 * e;
    }
  return p;
}

CurvatureAtPoint curvature_from_ricci(const Mat4& ric) {
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      if (std::abs(ric[a][b] - ric[b][a]) > 1e-13 * std::max(1.0, std::abs(ric[a][b])))
        throw std::invalid_argument("curvature_from_ricci: Ricci tensor must be symmetric");
  double rs = 0.0;
  for (int a = 0; a < 4; a++) rs += kEta[a] * ric[a][a];
  auto g = [](int a, int b) { return a == b ? kEta[a] : 0.0; };
  Rank4 r;
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      for (int c = 0; c < 4; c++)
        for (int d = 0; d < 4; d++)
          r(a, b, c, d) = 0.5 * (g(a, c) * ric[b][d] + g(b, d) * ric[a][c] -
                                 g(a, d) * ric[b][c] - g(b, c) * ric[a][d]) -
                          rs / 6.0 * (g(a, c) * g(b, d) - g(a, d) * g(b, c));
  return validate_riemann(r);
}

BelRobinsonTensor bel_robinson(const CurvatureAtPoint& c) {
  if (!c.is_vacuum) throw std::invalid_argument("bel_robinson requires vacuum curvature");
  const Rank4& w = c.riemann;
  // Wud(r,m,s,a) = W^r_m{}^s_a
  Rank4 wud;
  for (int r = 0; r < 4; r++)
    for (int m = 0; m < 4; m++)
      for (int s = 0; s < 4; s++)
        for (int a = 0; a < 4; a++) wud(r, m, s, a) = kEta[r] * kEta[s] * w(r, m, s, a);
  BelRobinsonTensor q;
  for (int m = 0; m < 4; m++)
    for (int n = 0; n < 4; n++)
      for (int a = 0; a < 4; a++)
        for (int b = 0; b < 4; b++) {
          double t12 = 0.0;
          for (int r = 0; r < 4; r++)
            for (int s = 0; s < 4; s++)
              t12 += wud(r, m, s, a) * w(r, n, s, b) + wud(r, m, s, b) * w(r, n, s, a);
          double t3 = 0.0;
          if (m == n) {
            for (int r = 0; r < 4; r++)
              for (int s = 0; s < 4; s++)
                for (int t = 0; t < 4; t++)
                  t3 += kEta[r] * kEta[s] * kEta[t] * w(a, r, s, t) * w(b, r, s, t);
            t3 *= kEta[m];
          }
          q.q(m, n, a, b) = t12 - 0.5 * t3;
        }
  return q;
}

double q_contract(const CurvatureAtPoint& c, const Observer& t0) {
  if (!c.is_vacuum) throw std::invalid_argument("q_contract requires vacuum curvature");
  const Rank4& w = c.riemann;
  double s0 = 0.0, sD = 0.0;
  for (int k = 1; k < 4; k++)
    for (int m = 1; m < 4; m++)
      for (int n = 1; n < 4; n++) s0 += w(0, k, m, n) * w(0, k, m, n);
  for (int m = 1; m < 4; m++)
    for (int n = 1; n < 4; n++) sD += w(0, m, 0, n) * w(0, m, 0, n);
  double out = (0.5 * s0 + sD) * t0.a0;
  for (int i = 0; i < 3; i++) {
    double si = 0.0;
    for (int m = 1; m < 4; m++)
      for (int n = 1; n < 4; n++) si += w(0, m, 0, n) * w(0, m, i + 1, n);
    out += 2.0 * si * t0.a[i];
  }
  return out;
}

CausalVector v_vector(const CurvatureAtPoint& c) {
  if (!c.is_vacuum) throw std::invalid_argument("v_vector requires vacuum curvature");
  const Rank4& w = c.riemann;
  Vec4 v{};
  double s0 = 0.0, sD = 0.0;
  for (int k = 1; k < 4; k++)
    for (int m = 1; m < 4; m++)
      for (int n = 1; n < 4; n++) s0 += w(0, k, m, n) * w(0, k, m, n);
  for (int m = 1; m < 4; m++)
    for (int n = 1; n < 4; n++) sD += w(0, m, 0, n) * w(0, m, 0, n);
  v[0] = 0.5 * s0 + sD;
  for (int i = 0; i < 3; i++) {
    double si = 0.0;
    for (int m = 1; m < 4; m++)
      for (int n = 1; n < 4; n++) si += w(0, m, 0, n) * w(0, m, i + 1, n);
    v[i + 1] = 2.0 * si;
  }
  return classify_causal(v);
}

}  // namespace smallsphere
