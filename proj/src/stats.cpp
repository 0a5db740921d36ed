#include "wildsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "wildsim/errors.hpp"

namespace wildsim {

namespace {

// Asymptotic standard deviation of a sample median is sqrt(pi/2) times the
// one of the mean; applied to block means for the median-of-means error bar.
constexpr double kMedianInflation = 1.2533141373155003;

double median_inplace(std::vector<double>& v) {
  const size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

MomEstimate median_of_means(std::span<const double> values, int blocks) {
  if (blocks < 1) throw std::invalid_argument("median_of_means needs blocks >= 1");
  const size_t n = values.size();
  const size_t per_block = n / static_cast<size_t>(blocks);
  if (per_block == 0) {
    throw InsufficientDataError("fewer values than blocks");
  }
  std::vector<double> block_means(static_cast<size_t>(blocks));
  for (int b = 0; b < blocks; ++b) {
    double sum = 0.0;
    const size_t begin = static_cast<size_t>(b) * per_block;
    for (size_t i = begin; i < begin + per_block; ++i) sum += values[i];
    block_means[static_cast<size_t>(b)] = sum / static_cast<double>(per_block);
  }
  double mean_of_blocks = 0.0;
  for (double m : block_means) mean_of_blocks += m;
  mean_of_blocks /= static_cast<double>(blocks);
  double var = 0.0;
  for (double m : block_means) {
    const double d = m - mean_of_blocks;
    var += d * d;
  }
  var = blocks > 1 ? var / (blocks - 1.0) : 0.0;

  MomEstimate est;
  est.plain_mean = mean_of_blocks;
  est.value = median_inplace(block_means);
  est.std_error = kMedianInflation * std::sqrt(var / static_cast<double>(blocks));
  return est;
}

MomentReport estimate_weighted_moment(std::span<const SampleRecord> records,
                                      double p, int blocks) {
  if (blocks < 8) throw std::invalid_argument("need blocks >= 8");
  if (records.size() < static_cast<size_t>(blocks) * 8) {
    throw InsufficientDataError("need at least 8 records per block");
  }
  std::vector<double> values(records.size());
  std::vector<double> weights(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    values[i] = records[i].m *
                (p == 0.0 ? 1.0 : std::pow(norm(records[i].v), p));
    weights[i] = records[i].m;
  }
  const MomEstimate est = median_of_means(values, blocks);

  MomentReport report;
  report.name = "E[M |V|^" + std::to_string(p) + "]";
  double sum = 0.0;
  for (double x : values) sum += x;
  report.plain_mean = sum / static_cast<double>(values.size());
  report.blocks = blocks;
  report.median_of_means = est.value;
  // Degenerate all-equal blocks (e.g. t = 0) would give a zero error bar.
  report.ci_half_width =
      std::max(est.std_error, 1e-15 * (1.0 + std::fabs(report.plain_mean)));
  report.tail_exponent = hill_tail_exponent(weights);
  return report;
}

double hill_tail_exponent(std::span<const double> values) {
  std::vector<double> pos;
  pos.reserve(values.size());
  for (double v : values) {
    if (v > 0.0) pos.push_back(v);
  }
  if (pos.size() < 4) return std::numeric_limits<double>::infinity();
  std::sort(pos.begin(), pos.end(), std::greater<>());
  size_t k = static_cast<size_t>(std::sqrt(static_cast<double>(pos.size())));
  k = std::clamp<size_t>(k, 2, pos.size() - 1);
  double acc = 0.0;
  for (size_t i = 0; i < k; ++i) {
    acc += std::log(pos[i] / pos[k]);
  }
  if (acc <= 0.0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(k) / acc;
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.1) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

struct SortedWeighted {
  std::vector<double> x;
  std::vector<double> w;  // normalized to sum 1
  double n_eff = 0.0;
};

SortedWeighted sort_normalize(std::span<const double> x, std::span<const double> w) {
  if (x.size() != w.size() || x.empty()) {
    throw std::invalid_argument("weighted sample needs matching nonempty arrays");
  }
  std::vector<size_t> order(x.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return x[a] < x[b]; });
  SortedWeighted out;
  out.x.resize(x.size());
  out.w.resize(x.size());
  double total = 0.0, total2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    out.x[i] = x[order[i]];
    out.w[i] = w[order[i]];
    total += out.w[i];
    total2 += out.w[i] * out.w[i];
  }
  if (!(total > 0.0)) throw std::invalid_argument("weights must have positive mass");
  for (double& wi : out.w) wi /= total;
  out.n_eff = total * total / total2;
  return out;
}

double ks_statistic(const SortedWeighted& a, const SortedWeighted& b) {
  double d = 0.0, fa = 0.0, fb = 0.0;
  size_t i = 0, j = 0;
  while (i < a.x.size() || j < b.x.size()) {
    const double xa = i < a.x.size() ? a.x[i] : std::numeric_limits<double>::infinity();
    const double xb = j < b.x.size() ? b.x[j] : std::numeric_limits<double>::infinity();
    const double cur = std::min(xa, xb);
    while (i < a.x.size() && a.x[i] == cur) fa += a.w[i++];
    while (j < b.x.size() && b.x[j] == cur) fb += b.w[j++];
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

KsResult finish_ks(double d, double n_eff) {
  KsResult r;
  r.statistic = d;
  r.n_effective = n_eff;
  const double sn = std::sqrt(n_eff);
  r.p_value = kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
  return r;
}

}  // namespace

KsResult ks_two_sample_weighted(std::span<const double> x, std::span<const double> wx,
                                std::span<const double> y, std::span<const double> wy) {
  const SortedWeighted a = sort_normalize(x, wx);
  const SortedWeighted b = sort_normalize(y, wy);
  const double d = ks_statistic(a, b);
  const double n_eff = a.n_eff * b.n_eff / (a.n_eff + b.n_eff);
  return finish_ks(d, n_eff);
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  const std::vector<double> wx(x.size(), 1.0), wy(y.size(), 1.0);
  return ks_two_sample_weighted(x, wx, y, wy);
}

KsResult ks_one_sample(std::span<const double> x,
                       const std::function<double(double)>& cdf) {
  if (x.empty()) throw std::invalid_argument("ks_one_sample needs data");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return finish_ks(d, n);
}

double wasserstein1_weighted(std::span<const double> x, std::span<const double> wx,
                             std::span<const double> y, std::span<const double> wy) {
  const SortedWeighted a = sort_normalize(x, wx);
  const SortedWeighted b = sort_normalize(y, wy);
  // Integral over the merged grid of |F_a - F_b| dx.
  double dist = 0.0, fa = 0.0, fb = 0.0;
  size_t i = 0, j = 0;
  double prev = std::min(a.x.front(), b.x.front());
  while (i < a.x.size() || j < b.x.size()) {
    const double xa = i < a.x.size() ? a.x[i] : std::numeric_limits<double>::infinity();
    const double xb = j < b.x.size() ? b.x[j] : std::numeric_limits<double>::infinity();
    const double cur = std::min(xa, xb);
    dist += std::fabs(fa - fb) * (cur - prev);
    while (i < a.x.size() && a.x[i] == cur) fa += a.w[i++];
    while (j < b.x.size() && b.x[j] == cur) fb += b.w[j++];
    prev = cur;
  }
  return dist;
}

double sliced_w1(std::span<const Vec3> v, std::span<const double> w,
                 std::span<const Vec3> u, int n_proj, uint64_t seed) {
  if (n_proj < 1) throw std::invalid_argument("sliced_w1 needs n_proj >= 1");
  RngStream rng = RngStream::root(seed);
  std::vector<double> pv(v.size()), pu(u.size());
  const std::vector<double> wu(u.size(), 1.0);
  double acc = 0.0;
  for (int k = 0; k < n_proj; ++k) {
    const Vec3 dir = rng.next_unit_vector();
    for (size_t i = 0; i < v.size(); ++i) pv[i] = dot(v[i], dir);
    for (size_t j = 0; j < u.size(); ++j) pu[j] = dot(u[j], dir);
    acc += wasserstein1_weighted(pv, w, pu, wu);
  }
  return acc / static_cast<double>(n_proj);
}

}  // namespace wildsim
