#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "wildsim/series.hpp"
#include "wildsim/errors.hpp"

using namespace wildsim;

namespace {

ModelParams unit_params(double gamma, double e0) {
  ModelParams p;
  p.gamma = gamma;
  p.e0 = e0;
  p.kernel = AngularKernel::constant(1.0 / (4.0 * std::numbers::pi));
  return p;
}

ParticleCloud single(double w, double m, const Vec3& v) {
  ParticleCloud c;
  c.particles.push_back(Particle{w, 0.0, WeightedState{m, v}});
  return c;
}

}  // namespace

TEST_CASE("Q operator mass identity") {
  const ModelParams p0 = unit_params(0.0, 1.0);
  RngStream rng = RngStream::root(61);

  SUBCASE("single unit particle at gamma = 0: mass = Lambda = 4") {
    const ParticleCloud f = single(1.0, 1.0, {1, 0, 0});
    const ParticleCloud out = q_operator(f, f, p0, 100, rng);
    CHECK(out.total_mass() == doctest::Approx(4.0).epsilon(1e-12));
  }

  SUBCASE("zero-mass input gives a zero-mass result") {
    const ParticleCloud f = single(1.0, 1.0, {1, 0, 0});
    const ParticleCloud z = single(0.0, 1.0, {0, 1, 0});
    CHECK(q_operator(f, z, p0, 50, rng).total_mass() == 0.0);
    CHECK(q_operator(z, f, p0, 50, rng).total_mass() == 0.0);
  }

  SUBCASE("empty clouds are rejected") {
    const ParticleCloud f = single(1.0, 1.0, {1, 0, 0});
    CHECK_THROWS_AS((void)q_operator(f, ParticleCloud{}, p0, 10, rng), EmptyCloudError);
    CHECK_THROWS_AS((void)q_operator(ParticleCloud{}, f, p0, 10, rng), EmptyCloudError);
  }

  SUBCASE("mass equals the brute-force double sum on random clouds") {
    const ModelParams p = unit_params(0.7, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
      ParticleCloud f, g;
      for (int i = 0; i < 10; ++i) {
        f.particles.push_back(Particle{rng.next_double(), 0.0,
                                       WeightedState{1.0, rng.next_normal3()}});
        g.particles.push_back(Particle{rng.next_double(), 0.0,
                                       WeightedState{1.0, rng.next_normal3()}});
      }
      double brute = 0.0;
      for (const Particle& a : f.particles) {
        for (const Particle& b : g.particles) {
          brute += p.kernel.kappa() * a.w * b.w * lambda_rate(a.y.v, p);
        }
      }
      const ParticleCloud out = q_operator(f, g, p, 333, rng);
      CHECK(out.total_mass() == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("Gamma damping") {
  const ModelParams p0 = unit_params(0.0, 1.0);  // kappa Lambda = 4

  SUBCASE("all particles born at 0 damp by e^{-kappa Lambda t}") {
    ParticleCloud j = single(1.0, 1.0, {1, 0, 0});
    const ParticleCloud out = gamma_damp(j, 0.5, p0);
    REQUIRE(out.size() == 1);
    CHECK(out.particles[0].w == doctest::Approx(std::exp(-2.0)));
    CHECK(out.particles[0].s == 0.0);
  }

  SUBCASE("t = 0 keeps birth-time-zero particles unchanged") {
    ParticleCloud j = single(0.7, 1.0, {1, 0, 0});
    const ParticleCloud out = gamma_damp(j, 0.0, p0);
    REQUIRE(out.size() == 1);
    CHECK(out.particles[0].w == 0.7);
  }

  SUBCASE("particles born after t are dropped") {
    ParticleCloud j;
    j.particles.push_back(Particle{1.0, 0.8, WeightedState{1.0, {1, 0, 0}}});
    CHECK(gamma_damp(j, 0.5, p0).size() == 0);
  }
}

TEST_CASE("J measure of the trivial and two-leaf trees") {
  const InitialLaw dirac{1.0, VelocityLaw::point({1, 0, 0})};
  const ModelParams p0 = unit_params(0.0, 1.0);  // constant rate kappa Lambda = 4
  RngStream rng = RngStream::root(62);

  SUBCASE("leaf: probability mass 1 at s = 0") {
    SeriesBudget budget;
    const ParticleCloud j =
        j_measure(OrderedTree::leaf(), 0.3, dirac, p0, budget, rng);
    CHECK(j.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    for (const Particle& q : j.particles) CHECK(q.s == 0.0);
  }

  SUBCASE("two leaves, Dirac data: J mass (1 - e^{-2 kappa Lambda t})/2") {
    // Gamma_s(J_leaf) has mass e^{-4s}, so the Q mass rate is 4 e^{-8s} and
    // the integral over [0, t] is (1 - e^{-8t})/2.
    SeriesBudget budget;
    budget.n_particles = 128;
    budget.n_time = 256;
    const double t = 0.25;
    const OrderedTree two = OrderedTree::node(OrderedTree::leaf(), OrderedTree::leaf());
    const ParticleCloud j = j_measure(two, t, dirac, p0, budget, rng);
    const double closed = 0.5 * (1.0 - std::exp(-8.0 * t));
    CHECK(std::fabs(j.total_mass() - closed) <= 0.01 * closed);
  }

  SUBCASE("masses are nonnegative for every tree up to 7 nodes") {
    SeriesBudget budget;
    budget.n_particles = 128;
    budget.n_time = 8;
    for (const OrderedTree& tree : enumerate_trees(7)) {
      const ParticleCloud j = j_measure(tree, 0.1, dirac, p0, budget, rng);
      CHECK(j.total_mass() >= 0.0);
      for (const Particle& q : j.particles) REQUIRE(q.w >= 0.0);
    }
  }
}

TEST_CASE("truncated series") {
  const InitialLaw dirac{1.0, VelocityLaw::point({1, 0, 0})};
  const ModelParams p0 = unit_params(0.0, 1.0);
  SeriesBudget budget;
  budget.n_particles = 256;
  budget.n_time = 16;

  SUBCASE("k = 1 is the survival mass; exact for Dirac data") {
    const SeriesResult r = truncated_series(0.1, 1, dirac, p0, budget, 2, 63, 0);
    REQUIRE(r.masses.size() == 1);
    CHECK(r.masses[0].mass == doctest::Approx(std::exp(-0.4)).epsilon(1e-12));
    CHECK(r.cloud.total_mass() == doctest::Approx(std::exp(-0.4)).epsilon(1e-12));
  }

  SUBCASE("k = 1 Gaussian data matches an independent Monte Carlo oracle") {
    const InitialLaw gauss{1.0, VelocityLaw::gaussian({0, 0, 0}, 1.0 / 3.0)};
    const ModelParams p = unit_params(1.0, 1.0);
    const double t = 0.2;
    const SeriesResult r = truncated_series(t, 1, gauss, p, budget, 8, 64, 0);
    RngStream rng = RngStream::root(99);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double x =
          std::exp(-p.kernel.kappa() * lambda_rate(gauss.velocity.sample(rng), p) * t);
      sum += x;
      sum2 += x * x;
    }
    const double oracle = sum / n;
    const double se_oracle = std::sqrt((sum2 / n - oracle * oracle) / n);
    const double combined = std::sqrt(se_oracle * se_oracle +
                                      r.masses[0].std_error * r.masses[0].std_error);
    CHECK(std::fabs(r.masses[0].mass - oracle) <= 4.0 * combined + 1e-10);
  }

  SUBCASE("as t goes to 0, all mass sits on the trivial tree") {
    const SeriesResult r = truncated_series(1e-9, 3, dirac, p0, budget, 2, 68, 0);
    for (const TreeMass& tm : r.masses) {
      if (tm.tree.is_leaf()) {
        CHECK(tm.mass == doctest::Approx(1.0).epsilon(1e-6));
      } else {
        CHECK(tm.mass <= 1e-6);
      }
    }
  }

  SUBCASE("mass grows with k and stays below 1") {
    const double t = 0.125;  // kappa Lambda-bar t = 0.5
    double prev = 0.0;
    for (const int k : {1, 3, 5, 7}) {
      const SeriesResult r = truncated_series(t, k, dirac, p0, budget, 4, 65, 0);
      double total = 0.0, se2 = 0.0;
      for (const TreeMass& tm : r.masses) {
        CHECK(tm.mass >= 0.0);
        total += tm.mass;
        se2 += tm.std_error * tm.std_error;
      }
      CHECK(total >= prev - 1e-12);
      CHECK(total <= 1.0 + 4.0 * std::sqrt(se2) + 1e-9);
      prev = total;
    }
  }

  SUBCASE("constant-rate masses match the split-weighted tree law") {
    // At gamma = 0 the weighted process jumps at constant rate
    // kappa*Lambda = 4, so P(tree) = e^{-4t}(1-e^{-4t})^{leaves-1} p(tree),
    // where p is the recursive uniform-split shape probability
    // p(leaf) = 1, p(node(L,R)) = p(L) p(R) / (leaves - 1).
    std::function<double(const OrderedTree&)> split_p =
        [&](const OrderedTree& tree) -> double {
      if (tree.is_leaf()) return 1.0;
      const auto [l, r] = tree.children();
      return split_p(l) * split_p(r) / (tree.leaf_count() - 1.0);
    };
    const double t = 0.125;
    const SeriesResult r = truncated_series(t, 7, dirac, p0, budget, 4, 66, 0);
    const double decay = std::exp(-4.0 * t);
    for (const TreeMass& tm : r.masses) {
      const double expect = decay *
                            std::pow(1.0 - decay, tm.tree.leaf_count() - 1) *
                            split_p(tm.tree);
      CHECK(std::fabs(tm.mass - expect) <=
            std::max(4.0 * tm.std_error, 0.02 * expect));
    }
  }
}

TEST_CASE("systematic resampling preserves mass") {
  RngStream rng = RngStream::root(67);
  ParticleCloud cloud;
  for (int i = 0; i < 100; ++i) {
    cloud.particles.push_back(
        Particle{rng.next_double(), 0.0, WeightedState{1.0, rng.next_normal3()}});
  }
  const double mass = cloud.total_mass();
  const ParticleCloud out = systematic_resample(cloud, 37, rng);
  CHECK(out.size() == 37);
  CHECK(out.total_mass() == doctest::Approx(mass).epsilon(1e-12));
  CHECK_THROWS_AS((void)systematic_resample(ParticleCloud{}, 5, rng), EmptyCloudError);
}
