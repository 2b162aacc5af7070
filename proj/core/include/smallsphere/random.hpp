#ifndef SMALLSPHERE_RANDOM_HPP
#define SMALLSPHERE_RANDOM_HPP

#include <cstdint>
#include <random>

#include "smallsphere/curvature.hpp"
#include "smallsphere/frame.hpp"

namespace smallsphere {

struct Rank5;
struct Rank6;

/// Deterministic random source for the verify suites and tests. Gaussian
/// variates come from Box-Muller on mt19937_64 output, so streams are
/// reproducible across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();  // [0,1)
  double normal();
  Vec3 vec3(double scale = 1.0);
  Direction direction();
  Mat3 traceless_symmetric();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

ElectricMagneticParts random_parts(Rng& rng);
CurvatureAtPoint random_vacuum_weyl(Rng& rng);
/// Random curvature with both Weyl and Ricci content.
CurvatureAtPoint random_curvature(Rng& rng);
Rank5 random_rank5(Rng& rng);
Rank6 random_rank6(Rng& rng);

}  // namespace smallsphere

#endif
