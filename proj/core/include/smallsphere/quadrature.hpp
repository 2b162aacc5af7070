#ifndef SMALLSPHERE_QUADRATURE_HPP
#define SMALLSPHERE_QUADRATURE_HPP

#include <span>
#include <vector>

#include "smallsphere/fields.hpp"
#include "smallsphere/frame.hpp"

namespace smallsphere {

/// Product quadrature on S^2: Gauss-Legendre in cos(theta) x uniform in phi,
/// exact for spherical polynomials of total degree <= degree.
struct SphereGrid {
  struct Node {
    Direction x;
    double weight;
  };
  std::vector<Node> nodes;
  int degree = 0;

  double weight_sum() const;
};

/// ceil((degree+1)/2) Gauss-Legendre nodes in cos(theta), (degree+1) uniform
/// nodes in phi. Throws for degree < 2.
SphereGrid build_grid(int degree);

/// Weighted sum of evaluations with deterministic pairwise summation.
double integrate(const ScalarField& f, const SphereGrid& g);

template <class F>
double integrate_fn(F&& f, const SphereGrid& g) {
  std::vector<double> vals(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); i++)
    vals[i] = g.nodes[i].weight * f(g.nodes[i].x);
  return pairwise_sum(vals);
}

/// Closed-form integrals of monomials X^{i1}...X^{in} over S^2 (1-based
/// indices in {1,2,3}); arity 2, 4 or 6. Odd arities (1,3,5) integrate to 0
/// by parity; other arities are rejected.
double monomial_integral(std::span<const int> indices);

}  // namespace smallsphere

#endif
