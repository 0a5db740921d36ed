#include <doctest.h>

#include <cmath>
#include <vector>

#include "wildsim/rng.hpp"

using namespace wildsim;

TEST_CASE("streams are deterministic in (seed, draw index)") {
  RngStream a = RngStream::root(42);
  RngStream b = RngStream::root(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RngStream c = RngStream::root(43);
  bool all_equal = true;
  RngStream a2 = RngStream::root(42);
  for (int i = 0; i < 10; ++i) {
    all_equal = all_equal && (a2.next_u64() == c.next_u64());
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("split gives unrelated child streams, reproducibly") {
  RngStream parent = RngStream::root(7);
  RngStream c0 = parent.split(0);
  RngStream c1 = parent.split(1);
  CHECK(c0.key() != c1.key());
  CHECK(parent.split(0).key() == c0.key());
  // Drawing from the parent does not disturb derived children.
  parent.next_u64();
  CHECK(parent.split(1).key() == c1.key());
  CHECK(RngStream::from_key(c0.key()).next_u64() == c0.next_u64());
}

TEST_CASE("uniform, exponential and normal draws have the right moments") {
  RngStream rng = RngStream::root(1234);
  const int n = 200000;
  double su = 0.0, se = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    su += rng.next_double();
    se += rng.next_exponential(2.0);
    const double z = rng.next_normal();
    sn += z;
    sn2 += z * z;
  }
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(su / n - 0.5) < 0.3 * tol);          // sd of U is ~0.29
  CHECK(std::fabs(se / n - 0.5) < 0.5 * tol);          // Exp(2) mean 1/2, sd 1/2
  CHECK(std::fabs(sn / n) < tol);
  CHECK(std::fabs(sn2 / n - 1.0) < 1.5 * tol);
}

TEST_CASE("unit vectors live on the sphere with zero mean") {
  RngStream rng = RngStream::root(99);
  const int n = 100000;
  Vec3 mean;
  for (int i = 0; i < n; ++i) {
    const Vec3 u = rng.next_unit_vector();
    CHECK(std::fabs(norm(u) - 1.0) < 1e-12);
    mean = mean + u;
  }
  mean = (1.0 / n) * mean;
  CHECK(norm(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("poisson mean matches") {
  RngStream rng = RngStream::root(5);
  const int n = 200000;
  const double mu = 0.07;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(rng.next_poisson(mu));
  const double se = std::sqrt(mu / n);
  CHECK(std::fabs(sum / n - mu) < 4.0 * se);
}

TEST_CASE("next_index stays in range and is roughly uniform") {
  RngStream rng = RngStream::root(6);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const uint64_t k = rng.next_index(7);
    REQUIRE(k < 7);
    ++counts[static_cast<size_t>(k)];
  }
  for (int c : counts) {
    CHECK(std::fabs(c - n / 7.0) < 5.0 * std::sqrt(n / 7.0));
  }
}
