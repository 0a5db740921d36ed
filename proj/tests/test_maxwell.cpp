#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wildsim/errors.hpp"
#include "wildsim/maxwell.hpp"
#include "wildsim/stats.hpp"

using namespace wildsim;

namespace {

const AngularKernel& unit_kernel() {
  static const AngularKernel k =
      AngularKernel::constant(1.0 / (4.0 * std::numbers::pi));  // kappa = 1
  return k;
}

}  // namespace

TEST_CASE("wild weights") {
  CHECK(wild_weight(1, 0.0, 1.0) == 1.0);
  CHECK(wild_weight(2, 0.0, 1.0) == 0.0);
  CHECK(wild_weight(2, std::log(2.0), 1.0) == doctest::Approx(0.25).epsilon(1e-14));

  // Truncation identity at moderate N.
  const double t = 0.7, kappa = 2.0;
  double sum = 0.0;
  for (uint64_t n = 1; n <= 50; ++n) sum += wild_weight(n, t, kappa);
  const double closed = 1.0 - std::pow(-std::expm1(-kappa * t), 50.0);
  CHECK(sum == doctest::Approx(closed).epsilon(1e-13));
}

TEST_CASE("tree weights use the leaf count") {
  const OrderedTree leaf = OrderedTree::leaf();
  const OrderedTree two = OrderedTree::node(leaf, leaf);
  CHECK(tree_weight(leaf, 0.3, 1.0) == doctest::Approx(std::exp(-0.3)));
  CHECK(tree_weight(two, 0.0, 1.0) == 0.0);
  CHECK(tree_weight(two, std::log(2.0), 1.0) == doctest::Approx(0.25));
  const OrderedTree comb = OrderedTree::node(two, leaf);  // 3 leaves
  CHECK(tree_weight(comb, std::log(2.0), 1.0) == doctest::Approx(0.125));
}

TEST_CASE("geometric order sampler") {
  RngStream rng = RngStream::root(51);
  CHECK(sample_wild_order(0.0, 1.0, rng) == 1);
  const double t = 0.8, kappa = 1.0;
  const int n = 200000;
  double ones = 0.0, mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const uint64_t k = sample_wild_order(t, kappa, rng);
    ones += k == 1 ? 1.0 : 0.0;
    mean += static_cast<double>(k);
  }
  const double p = std::exp(-kappa * t);
  CHECK(std::fabs(ones / n - p) <= 4.0 * std::sqrt(p * (1 - p) / n));
  // E[N] = 1/p, Var = (1-p)/p^2.
  const double se = std::sqrt((1 - p) / (p * p) / n);
  CHECK(std::fabs(mean / n - 1.0 / p) <= 4.0 * se);
}

TEST_CASE("velocity sampler basics") {
  const VelocityLaw law = VelocityLaw::gaussian({0, 0, 0}, 1.0 / 3.0);

  SUBCASE("t = 0 is an initial draw") {
    RngStream stream = RngStream::root(52).split(3);
    const SampleRecord rec = velocity_sample(0.0, law, unit_kernel(), stream, 10);
    CHECK(rec.n == 0);
    CHECK(rec.tree == "0");
    CHECK(rec.m == 1.0);
    RngStream replay = stream;
    CHECK(norm(rec.v - law.sample(replay)) == 0.0);
  }

  SUBCASE("no-collision probability e^{-kappa t}") {
    const double t = 0.6;
    const BatchResult batch =
        batch_velocity_sample(t, 100000, law, unit_kernel(), 525, 1000000, 0);
    double zero = 0.0;
    for (const auto& r : batch.records) zero += r.n == 0 ? 1.0 : 0.0;
    const double expect = std::exp(-t);
    const double se = std::sqrt(expect * (1 - expect) / 100000.0);
    CHECK(std::fabs(zero / 100000.0 - expect) <= 4.0 * se);
  }

  SUBCASE("energy is conserved") {
    const BatchResult batch =
        batch_velocity_sample(1.0, 50000, law, unit_kernel(), 526, 1000000, 0);
    double mean = 0.0, var = 0.0;
    for (const auto& r : batch.records) mean += norm2(r.v);
    mean /= 50000.0;
    for (const auto& r : batch.records) {
      const double d = norm2(r.v) - mean;
      var += d * d;
    }
    var /= 49999.0;
    CHECK(std::fabs(mean - law.energy()) <= 3.0 * std::sqrt(var / 50000.0));
  }
}

TEST_CASE("Q_n sampling") {
  const VelocityLaw law = VelocityLaw::gaussian({0.2, 0, 0}, 0.5);

  SUBCASE("n = 1 is an f0 draw") {
    RngStream a = RngStream::root(53);
    RngStream b = RngStream::root(53);
    CHECK(norm(sample_from_qn(1, law, unit_kernel(), a) - law.sample(b)) == 0.0);
  }

  SUBCASE("n = 2 keeps the mean energy (iid inputs)") {
    RngStream rng = RngStream::root(54);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = norm2(sample_from_qn(2, law, unit_kernel(), rng));
      sum += e;
      sum2 += e * e;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::fabs(mean - law.energy()) <= 3.0 * se);
  }

  SUBCASE("order above the cap is refused") {
    RngStream rng = RngStream::root(55);
    CHECK_THROWS_AS((void)sample_from_qn(11, law, unit_kernel(), rng, 10),
                    CapExceededError);
  }
}

TEST_CASE("mixture sampler agrees with the dynamic sampler") {
  const VelocityLaw law = VelocityLaw::gaussian({0, 0, 0}, 1.0 / 3.0);
  const double t = 0.75;
  const uint64_t n = 100000;
  const BatchResult direct =
      batch_velocity_sample(t, n, law, unit_kernel(), 561, 1000000, 0);
  const BatchResult mixture =
      batch_wild_mixture(t, n, law, unit_kernel(), 562, 1000000, 0);
  REQUIRE(mixture.failures == 0);
  std::vector<double> sa(direct.records.size()), sb(mixture.records.size());
  for (size_t i = 0; i < sa.size(); ++i) sa[i] = norm(direct.records[i].v);
  for (size_t i = 0; i < sb.size(); ++i) sb[i] = norm(mixture.records[i].v);
  CHECK(ks_two_sample(sa, sb).p_value > 1e-3);

  // The mixture also reproduces the Wild weights: P(N-1 = 0) = e^{-kappa t}.
  double zero = 0.0;
  for (const auto& r : mixture.records) zero += r.n == 0 ? 1.0 : 0.0;
  const double expect = std::exp(-t);
  CHECK(std::fabs(zero / static_cast<double>(n) - expect) <=
        4.0 * std::sqrt(expect * (1 - expect) / static_cast<double>(n)));
}
