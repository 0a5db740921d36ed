#pragma once

#include <numbers>
#include <utility>

#include "wildsim/kernel.hpp"
#include "wildsim/rng.hpp"
#include "wildsim/vec3.hpp"

namespace wildsim {

// Model parameters of the hard-potential collision kernel
// |v-v*|^gamma * b(cos theta): the velocity exponent gamma in [0,1], the
// reference energy e0 > 0 entering the majorant rate, and the angular part.
// The default kernel is the normalized constant one (kappa = 1).
struct ModelParams {
  double gamma = 1.0;
  double e0 = 1.0;
  AngularKernel kernel =
      AngularKernel::constant(1.0 / (4.0 * std::numbers::pi));

  void validate() const;
};

// Collision auxiliary variable z = (sigma, a) on S^2 x [0,1].
struct CollisionAux {
  Vec3 sigma;
  double a = 0.0;
};

// Post-collision pair
//   v'  = (v+v*)/2 + |v-v*|/2 * sigma
//   v'* = (v+v*)/2 - |v-v*|/2 * sigma
// Momentum is conserved by construction, energy up to rounding.
std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& v_star,
                                     const Vec3& sigma);

// Draws sigma on the sphere with density b(<n, sigma>)/kappa relative to the
// surface measure, n = (v-v*)/|v-v*|. For v = v* (below threshold
// 1e-14*(1+|v|+|v*|)) the direction is uniform; the collision is the
// identity there anyway.
Vec3 sample_sigma(const Vec3& v, const Vec3& v_star, const AngularKernel& kernel,
                  RngStream& rng);

// sigma plus the acceptance variable a ~ U[0,1], drawn in that order.
CollisionAux sample_collision_aux(const Vec3& v, const Vec3& v_star,
                                  const AngularKernel& kernel, RngStream& rng);

}  // namespace wildsim
