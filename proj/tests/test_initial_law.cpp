#include <doctest.h>

#include <cmath>

#include "wildsim/initial_law.hpp"

using namespace wildsim;

TEST_CASE("declared energies are exact") {
  CHECK(VelocityLaw::gaussian({1, 2, 2}, 0.5).energy() == doctest::Approx(10.5));
  CHECK(VelocityLaw::two_point({1, 0, 0}, {0, 2, 0}, 0.25).energy() ==
        doctest::Approx(0.25 + 3.0));
  CHECK(VelocityLaw::uniform_ball(2.0).energy() == doctest::Approx(2.4));
  CHECK(VelocityLaw::shell(1.5).energy() == doctest::Approx(2.25));
  CHECK(VelocityLaw::point({1, 0, 0}).energy() == doctest::Approx(1.0));
}

TEST_CASE("sampled moments match the declared ones") {
  RngStream rng = RngStream::root(31);
  const int n = 200000;
  for (const VelocityLaw& law :
       {VelocityLaw::gaussian({0.5, 0, -0.5}, 1.0 / 3.0),
        VelocityLaw::two_point({1, 0, 0}, {-1, 1, 0}, 0.7),
        VelocityLaw::uniform_ball(1.0), VelocityLaw::shell(2.0)}) {
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = norm2(law.sample(rng));
      sum += e;
      sum2 += e * e;
    }
    const double mean = sum / n;
    const double se = std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n);
    CHECK(std::fabs(mean - law.energy()) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("point law is deterministic and weighted energy scales with m0") {
  RngStream rng = RngStream::root(32);
  const InitialLaw f0{2.0, VelocityLaw::point({0, 3, 4})};
  const WeightedState y = f0.sample(rng);
  CHECK(y.m == 2.0);
  CHECK(norm(y.v - Vec3{0, 3, 4}) == 0.0);
  CHECK(f0.velocity_energy() == doctest::Approx(25.0));
  CHECK(f0.weighted_energy() == doctest::Approx(50.0));
}

TEST_CASE("invalid laws are rejected") {
  CHECK_THROWS(VelocityLaw::two_point({0, 0, 0}, {1, 0, 0}, 1.5));
  CHECK_THROWS(VelocityLaw::uniform_ball(0.0));
  CHECK_THROWS(VelocityLaw::gaussian({0, 0, 0}, -1.0));
}
