#include "wildsim/initial_law.hpp"

#include <cmath>
#include <stdexcept>

namespace wildsim {

VelocityLaw::VelocityLaw(Variant law) : law_(std::move(law)) {
  if (const auto* g = std::get_if<GaussianLaw>(&law_)) {
    if (!(g->variance >= 0.0) || !is_finite(g->mean)) {
      throw std::invalid_argument("gaussian law needs finite mean, variance >= 0");
    }
  } else if (const auto* tp = std::get_if<TwoPointLaw>(&law_)) {
    if (!(tp->p >= 0.0 && tp->p <= 1.0) || !is_finite(tp->v1) || !is_finite(tp->v2)) {
      throw std::invalid_argument("two-point law needs finite points, p in [0,1]");
    }
  } else if (const auto* ball = std::get_if<UniformBallLaw>(&law_)) {
    if (!(ball->radius > 0.0)) {
      throw std::invalid_argument("ball law needs radius > 0");
    }
  } else if (const auto* sh = std::get_if<ShellLaw>(&law_)) {
    if (!(sh->radius > 0.0)) {
      throw std::invalid_argument("shell law needs radius > 0");
    }
  }
}

VelocityLaw VelocityLaw::gaussian(const Vec3& mean, double variance) {
  return VelocityLaw(GaussianLaw{mean, variance});
}

VelocityLaw VelocityLaw::two_point(const Vec3& v1, const Vec3& v2, double p) {
  return VelocityLaw(TwoPointLaw{v1, v2, p});
}

VelocityLaw VelocityLaw::point(const Vec3& v) {
  return VelocityLaw(TwoPointLaw{v, v, 1.0});
}

VelocityLaw VelocityLaw::uniform_ball(double radius) {
  return VelocityLaw(UniformBallLaw{radius});
}

VelocityLaw VelocityLaw::shell(double radius) {
  return VelocityLaw(ShellLaw{radius});
}

Vec3 VelocityLaw::sample(RngStream& rng) const {
  struct Visitor {
    RngStream& rng;
    Vec3 operator()(const GaussianLaw& g) const {
      const double sd = std::sqrt(g.variance);
      return g.mean + sd * rng.next_normal3();
    }
    Vec3 operator()(const TwoPointLaw& tp) const {
      return rng.next_double() < tp.p ? tp.v1 : tp.v2;
    }
    Vec3 operator()(const UniformBallLaw& ball) const {
      const double r = ball.radius * std::cbrt(rng.next_double());
      return r * rng.next_unit_vector();
    }
    Vec3 operator()(const ShellLaw& sh) const {
      return sh.radius * rng.next_unit_vector();
    }
  };
  return std::visit(Visitor{rng}, law_);
}

double VelocityLaw::energy() const {
  struct Visitor {
    double operator()(const GaussianLaw& g) const {
      return norm2(g.mean) + 3.0 * g.variance;
    }
    double operator()(const TwoPointLaw& tp) const {
      return tp.p * norm2(tp.v1) + (1.0 - tp.p) * norm2(tp.v2);
    }
    double operator()(const UniformBallLaw& ball) const {
      return 0.6 * ball.radius * ball.radius;
    }
    double operator()(const ShellLaw& sh) const { return sh.radius * sh.radius; }
  };
  return std::visit(Visitor{}, law_);
}

}  // namespace wildsim
