#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wildsim/weighted.hpp"

using namespace wildsim;

namespace {

ModelParams make_params(double gamma, double e0) {
  ModelParams p;
  p.gamma = gamma;
  p.e0 = e0;
  p.kernel = AngularKernel::constant(1.0 / (4.0 * std::numbers::pi));
  return p;
}

}  // namespace

TEST_CASE("majorant rate evaluations") {
  CHECK(lambda_rate({0, 0, 0}, make_params(0.5, 1.0)) == doctest::Approx(2.0));
  CHECK(lambda_rate({3, 0, 0}, make_params(1.0, 1.0)) == doctest::Approx(8.0));
  // gamma = 0 makes the rate constant, 2(1+e0), including at v = 0.
  CHECK(lambda_rate({0, 0, 0}, make_params(0.0, 1.0)) == doctest::Approx(4.0));
  CHECK(lambda_rate({7, -2, 1}, make_params(0.0, 1.0)) == doctest::Approx(4.0));
}

TEST_CASE("acceptance probability evaluations") {
  CHECK(acceptance_q({1, 1, 1}, {1, 1, 1}, make_params(1.0, 1.0)) == 0.0);
  CHECK(acceptance_q({1, 0, 0}, {-1, 0, 0}, make_params(1.0, 1.0)) ==
        doctest::Approx(0.5));
  // gamma = 0: q = 1/(2 (1+|v*|^2)).
  CHECK(acceptance_q({3, 0, 0}, {0, 0, 0}, make_params(0.0, 1.0)) ==
        doctest::Approx(0.5));
  CHECK(acceptance_q({3, 0, 0}, {1, 0, 0}, make_params(0.0, 1.0)) ==
        doctest::Approx(0.25));
}

TEST_CASE("rate dominates the true pair rate everywhere") {
  RngStream rng = RngStream::root(21);
  for (const double gamma : {0.0, 0.3, 0.7, 1.0}) {
    const ModelParams p = make_params(gamma, 2.5);
    for (int i = 0; i < 250000; ++i) {
      const Vec3 v = (100.0 * rng.next_double()) * rng.next_unit_vector();
      const Vec3 vs = (100.0 * rng.next_double()) * rng.next_unit_vector();
      const double pair_rate =
          (1.0 + p.e0) * std::pow(norm(v - vs), gamma) / (1.0 + norm2(vs));
      REQUIRE(lambda_rate(v, p) >= pair_rate - 1e-12);
    }
  }
}

TEST_CASE("collision map: weight update and fictitious jumps") {
  const ModelParams p = make_params(1.0, 1.0);

  SUBCASE("fictitious jump still reweights") {
    const WeightedState y{1.0, {2, 0, 0}};
    const WeightedState ys{1.0, {0, 0, 0}};
    const CollisionAux z{{0, 0, 1}, 0.999999};  // above q -> fictitious
    REQUIRE(acceptance_q(y.v, ys.v, p) < z.a);
    const WeightedState out = collision_map(y, ys, z, p);
    CHECK(out.m == doctest::Approx(0.5));
    CHECK(norm(out.v - y.v) == 0.0);
  }

  SUBCASE("a = 0 forces a real jump") {
    const WeightedState y{1.0, {1, 0, 0}};
    const WeightedState ys{1.0, {-1, 0, 0}};
    const CollisionAux z{{0, 1, 0}, 0.0};
    const WeightedState out = collision_map(y, ys, z, p);
    CHECK(norm(out.v - Vec3{0, 1, 0}) < 1e-15);
  }

  SUBCASE("weight formula m m* (1+|v*|^2)/(1+e0)") {
    const WeightedState y{2.0, {1, 0, 0}};
    const WeightedState ys{3.0, {1, 0, 0}};
    const CollisionAux z{{0, 0, 1}, 0.5};
    CHECK(collision_map(y, ys, z, p).m == doctest::Approx(6.0));
  }

  SUBCASE("weights stay positive") {
    RngStream rng = RngStream::root(22);
    for (int i = 0; i < 10000; ++i) {
      const WeightedState y{rng.next_double_open() * 10.0, rng.next_normal3()};
      const WeightedState ys{rng.next_double_open() * 10.0, rng.next_normal3()};
      const CollisionAux z{rng.next_unit_vector(), rng.next_double()};
      REQUIRE(collision_map(y, ys, z, p).m > 0.0);
    }
  }

  SUBCASE("gamma = 0, forced accept, unit weights is the plain collision") {
    const ModelParams p0 = make_params(0.0, 1.0);
    const WeightedState y{1.0, {1, 2, 3}};
    const WeightedState ys{1.0, {-2, 0, 1}};
    const Vec3 sigma{0, 0, 1};
    const WeightedState out = collision_map(y, ys, {sigma, 0.0}, p0);
    CHECK(norm(out.v - post_collision(y.v, ys.v, sigma).first) == 0.0);
  }
}

TEST_CASE("weak-form generator estimates") {
  const ModelParams p = make_params(1.0, 1.0);
  const double kappa = p.kernel.kappa();
  RngStream rng = RngStream::root(23);

  SUBCASE("constant test function gives exactly zero") {
    const auto est = generator_b([](const WeightedState&) { return 1.0; },
                                 {1.0, {1, 2, 0}}, {1.0, {0, -1, 1}}, p, 1000, rng);
    CHECK(est.value == 0.0);
    CHECK(est.std_error == 0.0);
  }

  SUBCASE("drift of the rate stays below kappa (1+e0)") {
    for (int trial = 0; trial < 20; ++trial) {
      const WeightedState y{1.0, 2.0 * rng.next_normal3()};
      const WeightedState ys{1.0, 2.0 * rng.next_normal3()};
      const auto est = generator_b(
          [&](const WeightedState& s) { return lambda_rate(s.v, p); }, y, ys, p,
          20000, rng);
      const double drift = est.value / lambda_rate(y.v, p);
      const double se = est.std_error / lambda_rate(y.v, p);
      CHECK(drift <= kappa * (1.0 + p.e0) + 4.0 * se);
    }
  }

  SUBCASE("symmetrized energy-bracket cancellation") {
    // With Phi(m,v) = m (1+|v|^2)/(1+e0), removing the explicit weight term
    // kappa Lambda(v) Phi(y) (Phi(y*) - 1) from B Phi leaves the pair
    // bracket, whose symmetrization vanishes.
    const auto phi = [&](const WeightedState& s) {
      return s.m * (1.0 + norm2(s.v)) / (1.0 + p.e0);
    };
    for (int trial = 0; trial < 10; ++trial) {
      const WeightedState y{1.0, 2.0 * rng.next_normal3()};
      const WeightedState ys{1.0, 2.0 * rng.next_normal3()};
      const auto fwd = generator_b(phi, y, ys, p, 40000, rng);
      const auto rev = generator_b(phi, ys, y, p, 40000, rng);
      const auto correction = [&](const WeightedState& a, const WeightedState& b) {
        return kappa * lambda_rate(a.v, p) * phi(a) * (phi(b) - 1.0);
      };
      const double bracket = (fwd.value - correction(y, ys)) +
                             (rev.value - correction(ys, y));
      const double se = std::sqrt(fwd.std_error * fwd.std_error +
                                  rev.std_error * rev.std_error);
      CHECK(std::fabs(bracket) <= 4.0 * se + 1e-12);
    }
  }
}
