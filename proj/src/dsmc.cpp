#include "wildsim/dsmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wildsim/errors.hpp"

namespace wildsim {

namespace {

double majorant(const std::vector<Vec3>& v, double gamma) {
  double max2 = 0.0;
  for (const Vec3& vi : v) max2 = std::max(max2, norm2(vi));
  return std::pow(2.0 * std::sqrt(max2), gamma);
}

}  // namespace

DsmcResult run_dsmc(size_t n_particles, double t, double dt, const VelocityLaw& f0,
                    const ModelParams& params, RngStream rng) {
  if (n_particles < 2 || n_particles % 2 != 0) {
    throw std::invalid_argument("run_dsmc needs an even particle count >= 2");
  }
  if (!(t >= 0.0)) throw std::invalid_argument("run_dsmc needs t >= 0");
  params.validate();
  const double kappa = params.kernel.kappa();
  const double n = static_cast<double>(n_particles);

  DsmcResult result;
  result.velocities.resize(n_particles);
  for (Vec3& v : result.velocities) v = f0.sample(rng);
  if (t == 0.0) return result;

  if (dt <= 0.0) {
    dt = 0.05 / (kappa * majorant(result.velocities, params.gamma));
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12)));
  const double h = t / static_cast<double>(steps);
  result.steps = steps;
  result.dt_used = h;

  std::vector<Vec3> snapshot(n_particles);
  for (int step = 0; step < steps; ++step) {
    snapshot = result.velocities;
    const double g_hat = majorant(snapshot, params.gamma);
    if (h * kappa * g_hat > 0.5) {
      throw StabilityViolationError("dt * kappa * majorant exceeds 0.5");
    }
    // Candidate count for particle i is Poisson at the majorized pair rate
    // kappa*G/n summed over the n-1 ordered partners.
    const double mu = h * kappa * g_hat * (n - 1.0) / n;
    for (size_t i = 0; i < n_particles; ++i) {
      const uint64_t k = rng.next_poisson(mu);
      for (uint64_t c = 0; c < k; ++c) {
        size_t j = rng.next_index(n_particles - 1);
        if (j >= i) ++j;
        ++result.candidates;
        const double rel = norm(snapshot[i] - snapshot[j]);
        const double accept = std::pow(rel, params.gamma) / g_hat;
        if (rng.next_double() <= accept) {
          ++result.accepted;
          const Vec3 sigma = sample_sigma(snapshot[i], snapshot[j],
                                          params.kernel, rng);
          result.velocities[i] =
              post_collision(snapshot[i], snapshot[j], sigma).first;
        }
      }
    }
  }
  return result;
}

namespace {

MomentComparison compare_moment(const std::string& name,
                                std::span<const SampleRecord> records,
                                std::span<const Vec3> oracle, double p,
                                int blocks, double n_sigma_max) {
  // Weighted side: self-normalized ratio per block, median over blocks (the
  // ratio is bias-robust per block at these sizes, the median guards the
  // heavy-tailed weights).
  std::vector<double> block_values;
  const size_t nb = static_cast<size_t>(blocks);
  const size_t per_block = records.size() / nb;
  if (per_block == 0) throw InsufficientDataError("too few records per block");
  for (size_t b = 0; b < nb; ++b) {
    double num = 0.0, den = 0.0;
    for (size_t i = b * per_block; i < (b + 1) * per_block; ++i) {
      num += records[i].m * std::pow(norm(records[i].v), p);
      den += records[i].m;
    }
    block_values.push_back(den > 0.0 ? num / den : 0.0);
  }
  const MomEstimate west = median_of_means(block_values, blocks);

  // Oracle side: plain mean with standard error.
  double omean = 0.0;
  for (const Vec3& v : oracle) omean += std::pow(norm(v), p);
  omean /= static_cast<double>(oracle.size());
  double ovar = 0.0;
  for (const Vec3& v : oracle) {
    const double d = std::pow(norm(v), p) - omean;
    ovar += d * d;
  }
  ovar /= static_cast<double>(oracle.size()) - 1.0;

  MomentComparison cmp;
  cmp.name = name;
  cmp.weighted_value = west.value;
  cmp.weighted_se = west.std_error;
  cmp.oracle_value = omean;
  cmp.oracle_se = std::sqrt(ovar / static_cast<double>(oracle.size()));
  const double combined = std::sqrt(cmp.weighted_se * cmp.weighted_se +
                                    cmp.oracle_se * cmp.oracle_se);
  cmp.n_sigma = combined > 0.0
                    ? std::fabs(cmp.weighted_value - cmp.oracle_value) / combined
                    : 0.0;
  cmp.pass = cmp.n_sigma <= n_sigma_max;
  return cmp;
}

}  // namespace

OracleReport weighted_vs_oracle_report(std::span<const SampleRecord> records,
                                       std::span<const Vec3> oracle, int n_proj,
                                       const CompareThresholds& thresholds,
                                       uint64_t seed) {
  if (records.empty() || oracle.empty()) {
    throw InsufficientDataError("comparison needs nonempty samples");
  }
  OracleReport report;

  std::vector<double> speeds(records.size()), weights(records.size());
  std::vector<Vec3> velocities(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    speeds[i] = norm(records[i].v);
    weights[i] = records[i].m;
    velocities[i] = records[i].v;
  }
  std::vector<double> ospeeds(oracle.size());
  for (size_t j = 0; j < oracle.size(); ++j) ospeeds[j] = norm(oracle[j]);
  const std::vector<double> oweights(oracle.size(), 1.0);

  report.radial_ks = ks_two_sample_weighted(speeds, weights, ospeeds, oweights);
  report.ks_pass = report.radial_ks.p_value > thresholds.ks_alpha;

  report.moments.push_back(compare_moment("E|V|", records, oracle, 1.0,
                                          thresholds.blocks,
                                          thresholds.moment_n_sigma));
  report.moments.push_back(compare_moment("E|V|^2", records, oracle, 2.0,
                                          thresholds.blocks,
                                          thresholds.moment_n_sigma));

  report.sliced_w1_value = sliced_w1(velocities, weights, oracle, n_proj, seed);
  report.w1_pass = report.sliced_w1_value <= thresholds.w1_max;

  report.pass = report.ks_pass && report.w1_pass;
  for (const MomentComparison& m : report.moments) report.pass = report.pass && m.pass;
  return report;
}

}  // namespace wildsim
