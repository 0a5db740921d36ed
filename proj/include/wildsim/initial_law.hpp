#pragma once

#include <string>
#include <variant>

#include "wildsim/rng.hpp"
#include "wildsim/weighted.hpp"

namespace wildsim {

// Samplable initial velocity distributions. Every built-in has finite
// moments of all the orders the samplers need.
struct GaussianLaw {
  Vec3 mean;
  double variance = 1.0;  // isotropic, per axis
};

struct TwoPointLaw {
  Vec3 v1;
  Vec3 v2;
  double p = 0.5;  // mass at v1
};

struct UniformBallLaw {
  double radius = 1.0;
};

struct ShellLaw {
  double radius = 1.0;
};

class VelocityLaw {
 public:
  using Variant = std::variant<GaussianLaw, TwoPointLaw, UniformBallLaw, ShellLaw>;

  VelocityLaw() : law_(GaussianLaw{}) {}
  explicit VelocityLaw(Variant law);

  static VelocityLaw gaussian(const Vec3& mean, double variance);
  static VelocityLaw two_point(const Vec3& v1, const Vec3& v2, double p);
  static VelocityLaw point(const Vec3& v);  // TwoPoint(v, v, 1)
  static VelocityLaw uniform_ball(double radius);
  static VelocityLaw shell(double radius);

  Vec3 sample(RngStream& rng) const;

  // Exact second moment: integral of |v|^2 under the law.
  double energy() const;

  const Variant& law() const { return law_; }

 private:
  Variant law_;
};

// Initial law F0 = delta_{m0} x (velocity law) on (0,inf) x R^3.
struct InitialLaw {
  double m0 = 1.0;
  VelocityLaw velocity;

  WeightedState sample(RngStream& rng) const {
    return WeightedState{m0, velocity.sample(rng)};
  }

  // Energy of the velocity marginal (no weight), integral |v|^2 F0(dm,dv).
  double velocity_energy() const { return velocity.energy(); }

  // Energy of the m-moment measure, integral m |v|^2 F0(dm,dv). This is the
  // e0 the model must use for the weighted sampler to track the physical
  // solution.
  double weighted_energy() const { return m0 * velocity.energy(); }
};

}  // namespace wildsim
