#include "smallsphere/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smallsphere {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; i++) {
    double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; it++) {
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; k++) {
        const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = xi;
    for (int k = 2; k <= n; k++) {
      const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

}  // namespace

double SphereGrid::weight_sum() const {
  std::vector<double> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); i++) w[i] = nodes[i].weight;
  return pairwise_sum(w);
}

SphereGrid build_grid(int degree) {
  if (degree < 2) throw std::invalid_argument("build_grid: degree must be >= 2");
  const int ntheta = (degree + 2) / 2;
  const int nphi = degree + 1;
  std::vector<double> cz, wz;
  gauss_legendre(ntheta, cz, wz);
  SphereGrid g;
  g.degree = degree;
  g.nodes.reserve(static_cast<std::size_t>(ntheta) * nphi);
  for (int i = 0; i < ntheta; i++) {
    const double c = cz[i];
    const double s = std::sqrt(1.0 - c * c);
    const double wn = wz[i] * 2.0 * std::numbers::pi / nphi;
    for (int m = 0; m < nphi; m++) {
      const double phi = 2.0 * std::numbers::pi * m / nphi;
      Direction d;
      d.x = {s * std::cos(phi), s * std::sin(phi), c};
      g.nodes.push_back({d, wn});
    }
  }
  return g;
}

double integrate(const ScalarField& f, const SphereGrid& g) {
  return integrate_fn([&f](const Direction& x) { return f(x); }, g);
}

double monomial_integral(std::span<const int> indices) {
  const std::size_t n = indices.size();
  for (int i : indices)
    if (i < 1 || i > 3) throw std::invalid_argument("monomial_integral: indices must be in {1,2,3}");
  if (n == 1 || n == 3 || n == 5) return 0.0;
  const double fourpi = 4.0 * std::numbers::pi;
  auto d = [&](int a, int b) { return indices[a] == indices[b] ? 1.0 : 0.0; };
  if (n == 2) return fourpi / 3.0 * d(0, 1);
  if (n == 4) return fourpi / 15.0 * (d(0, 1) * d(2, 3) + d(0, 2) * d(1, 3) + d(0, 3) * d(1, 2));
  if (n == 6) {
    auto delta4 = [&](int a, int b, int c, int e) {
      return d(a, b) * d(c, e) + d(a, c) * d(b, e) + d(a, e) * d(b, c);
    };
    const double s = d(0, 1) * delta4(2, 3, 4, 5) + d(0, 2) * delta4(1, 3, 4, 5) +
                     d(0, 3) * delta4(1, 2, 4, 5) + d(0, 4) * delta4(1, 2, 3, 5) +
                     d(0, 5) * delta4(1, 2, 3, 4);
    return fourpi / 105.0 * s;
  }
  throw std::invalid_argument("monomial_integral: unsupported arity (use 2, 4 or 6)");
}

}  // namespace smallsphere
