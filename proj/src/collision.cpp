#include "wildsim/collision.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wildsim {

void ModelParams::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0,1]");
  }
  if (!(e0 > 0.0) || !std::isfinite(e0)) {
    throw std::invalid_argument("e0 must be positive and finite");
  }
}

std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& v_star,
                                     const Vec3& sigma) {
  const Vec3 center = 0.5 * (v + v_star);
  const double half_gap = 0.5 * norm(v - v_star);
  return {center + half_gap * sigma, center - half_gap * sigma};
}

namespace {

// Orthonormal frame perpendicular to the unit vector n: cross against the
// coordinate axis of smallest |n| component, which stays away from the
// degenerate parallel case.
void frame(const Vec3& n, Vec3& e1, Vec3& e2) {
  const double ax = std::fabs(n.x), ay = std::fabs(n.y), az = std::fabs(n.z);
  Vec3 axis{1.0, 0.0, 0.0};
  if (ay <= ax && ay <= az) {
    axis = {0.0, 1.0, 0.0};
  } else if (az <= ax && az <= ay) {
    axis = {0.0, 0.0, 1.0};
  }
  e1 = cross(n, axis);
  e1 = (1.0 / norm(e1)) * e1;
  e2 = cross(n, e1);
}

}  // namespace

Vec3 sample_sigma(const Vec3& v, const Vec3& v_star, const AngularKernel& kernel,
                  RngStream& rng) {
  const Vec3 d = v - v_star;
  const double nd = norm(d);
  if (nd < 1e-14 * (1.0 + norm(v) + norm(v_star))) {
    return rng.next_unit_vector();
  }
  const Vec3 n = (1.0 / nd) * d;
  const double u = kernel.sample_cosine(rng);
  const double phi = 2.0 * std::numbers::pi * rng.next_double();
  Vec3 e1, e2;
  frame(n, e1, e2);
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  return u * n + (s * std::cos(phi)) * e1 + (s * std::sin(phi)) * e2;
}

CollisionAux sample_collision_aux(const Vec3& v, const Vec3& v_star,
                                  const AngularKernel& kernel, RngStream& rng) {
  CollisionAux z;
  z.sigma = sample_sigma(v, v_star, kernel, rng);
  z.a = rng.next_double();
  return z;
}

}  // namespace wildsim
