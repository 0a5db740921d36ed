#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wildsim/sampler.hpp"

namespace wildsim {

// Estimators that stay honest under heavy-tailed Monte Carlo weights: the
// weight M_t may well have infinite second moment, so every headline number
// is reported both as a plain mean and as a median-of-means over blocks,
// with a Hill tail-exponent diagnostic alongside.

struct MomentReport {
  std::string name;
  double plain_mean = 0.0;
  int blocks = 0;
  double median_of_means = 0.0;
  double ci_half_width = 0.0;  // one standard error of the median-of-means
  double tail_exponent = 0.0;  // Hill estimate on the weights; large = light tail
};

// Estimates E[M_t |V_t|^p] from records (each replicate contributes
// m * |v|^p with equal probability weight). Throws InsufficientDataError
// when there are fewer than 8 records per block.
MomentReport estimate_weighted_moment(std::span<const SampleRecord> records,
                                      double p, int blocks);

// Median-of-means of plain values over equal blocks (trailing remainder
// dropped). Returns {median_of_means, std_error}.
struct MomEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double plain_mean = 0.0;
};
MomEstimate median_of_means(std::span<const double> values, int blocks);

// Hill tail-exponent estimator on the top sqrt(N) order statistics of
// positive data. Large values mean light tails; ~2 or below means the
// variance is in doubt.
double hill_tail_exponent(std::span<const double> values);

// Two-sample Kolmogorov-Smirnov for weighted empirical measures.
// Weights are self-normalized; the effective sample size (sum w)^2 / sum w^2
// replaces the count in the asymptotic p-value.
struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double n_effective = 0.0;
};
KsResult ks_two_sample_weighted(std::span<const double> x, std::span<const double> wx,
                                std::span<const double> y, std::span<const double> wy);
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

// One-sample KS against an exact CDF given as callable on sorted data.
KsResult ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_q(double lambda);

// 1-D Wasserstein-1 distance between weighted empirical measures
// (self-normalized): integral |F_x - F_y| over the real line.
double wasserstein1_weighted(std::span<const double> x, std::span<const double> wx,
                             std::span<const double> y, std::span<const double> wy);

// Sliced W1: average of the 1-D distance over n_proj random directions
// (deterministic in seed) between the weighted cloud {(v_i, m_i)} and the
// unweighted cloud {u_j}.
double sliced_w1(std::span<const Vec3> v, std::span<const double> w,
                 std::span<const Vec3> u, int n_proj, uint64_t seed);

}  // namespace wildsim
