#include <doctest.h>

#include <cmath>
#include <vector>

#include "wildsim/errors.hpp"
#include "wildsim/stats.hpp"

using namespace wildsim;

TEST_CASE("median of means basics") {
  std::vector<double> constant(320, 2.5);
  const MomEstimate c = median_of_means(constant, 32);
  CHECK(c.value == 2.5);
  CHECK(c.std_error == 0.0);

  // One absurd outlier barely moves the median of block means.
  std::vector<double> contaminated(3200, 1.0);
  contaminated[17] = 1e9;
  const MomEstimate r = median_of_means(contaminated, 32);
  CHECK(r.value == doctest::Approx(1.0));

  CHECK_THROWS_AS((void)median_of_means(std::vector<double>(5, 1.0), 32),
                  InsufficientDataError);
}

TEST_CASE("weighted moment report") {
  std::vector<SampleRecord> records(2560);
  RngStream rng = RngStream::root(81);
  for (auto& r : records) {
    r.m = 1.0;
    r.v = rng.next_normal3();
  }
  SUBCASE("p = 0 with unit weights is exactly the mass 1") {
    const MomentReport rep = estimate_weighted_moment(records, 0.0, 32);
    CHECK(rep.plain_mean == 1.0);
    CHECK(rep.median_of_means == 1.0);
    CHECK(rep.ci_half_width > 0.0);
  }
  SUBCASE("p = 2 with unit weights equals the plain mean of |v|^2") {
    const MomentReport rep = estimate_weighted_moment(records, 2.0, 32);
    double mean = 0.0;
    for (const auto& r : records) mean += norm2(r.v);
    mean /= static_cast<double>(records.size());
    CHECK(rep.plain_mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(std::fabs(rep.median_of_means - mean) <= 3.0 * rep.ci_half_width);
  }
  SUBCASE("too few records per block throws") {
    const std::vector<SampleRecord> few(records.begin(), records.begin() + 100);
    CHECK_THROWS_AS((void)estimate_weighted_moment(few, 0.0, 32),
                    InsufficientDataError);
  }
}

TEST_CASE("Hill estimator recovers a Pareto tail index") {
  RngStream rng = RngStream::root(82);
  std::vector<double> pareto(200000);
  for (double& x : pareto) {
    x = std::pow(rng.next_double_open(), -0.5);  // alpha = 2
  }
  const double alpha = hill_tail_exponent(pareto);
  CHECK(alpha == doctest::Approx(2.0).epsilon(0.25));

  // Light-tailed data gets a large exponent.
  std::vector<double> light(10000, 0.0);
  for (double& x : light) x = 1.0 + 0.01 * rng.next_double();
  CHECK(hill_tail_exponent(light) > 10.0);
}

TEST_CASE("Kolmogorov survival values") {
  // Classical two-sided critical points.
  CHECK(kolmogorov_q(1.358) == doctest::Approx(0.05).epsilon(0.02));
  CHECK(kolmogorov_q(1.628) == doctest::Approx(0.01).epsilon(0.05));
  CHECK(kolmogorov_q(0.05) == 1.0);
  CHECK(kolmogorov_q(3.0) < 1e-7);
}

TEST_CASE("two-sample KS behaves") {
  RngStream rng = RngStream::root(83);
  const int n = 50000;
  std::vector<double> a(n), b(n), shifted(n);
  for (int i = 0; i < n; ++i) {
    a[i] = rng.next_normal();
    b[i] = rng.next_normal();
    shifted[i] = rng.next_normal() + 0.1;
  }
  CHECK(ks_two_sample(a, b).p_value > 1e-3);
  CHECK(ks_two_sample(a, shifted).p_value < 1e-6);

  // Halving weights by duplication changes nothing.
  std::vector<double> doubled;
  std::vector<double> wd;
  for (double x : a) {
    doubled.push_back(x);
    doubled.push_back(x);
    wd.push_back(0.5);
    wd.push_back(0.5);
  }
  const std::vector<double> ones(b.size(), 1.0);
  const KsResult plain = ks_two_sample(a, b);
  const KsResult weighted = ks_two_sample_weighted(doubled, wd, b, ones);
  CHECK(weighted.statistic == doctest::Approx(plain.statistic).epsilon(1e-12));
}

TEST_CASE("one-sample KS against the exact cdf") {
  RngStream rng = RngStream::root(84);
  std::vector<double> u(50000);
  for (double& x : u) x = rng.next_double();
  CHECK(ks_one_sample(u, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value >
        1e-3);
}

TEST_CASE("Wasserstein distances") {
  const std::vector<double> x{0.0}, y{1.0}, w{1.0};
  CHECK(wasserstein1_weighted(x, w, y, w) == doctest::Approx(1.0));
  CHECK(wasserstein1_weighted(x, w, x, w) == 0.0);

  RngStream rng = RngStream::root(85);
  std::vector<Vec3> cloud(2000);
  for (Vec3& v : cloud) v = rng.next_normal3();
  const std::vector<double> ones(cloud.size(), 1.0);
  CHECK(sliced_w1(cloud, ones, cloud, 8, 5) == 0.0);

  std::vector<Vec3> shifted = cloud;
  for (Vec3& v : shifted) v = v + Vec3{0.5, 0, 0};
  CHECK(sliced_w1(cloud, ones, shifted, 8, 5) > 0.05);
}
