#include "wildsim/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "wildsim/dsmc.hpp"
#include "wildsim/maxwell.hpp"
#include "wildsim/records_io.hpp"
#include "wildsim/runner.hpp"
#include "wildsim/series.hpp"
#include "wildsim/stats.hpp"

namespace wildsim {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);
constexpr double kSlicedW1Max = 0.02;

std::string fmt(double v, int precision = 4) {
  std::ostringstream ss;
  ss.precision(precision);
  ss << v;
  return ss.str();
}

ModelParams unit_params(double gamma, double e0) {
  ModelParams params;
  params.gamma = gamma;
  params.e0 = e0;
  params.kernel = AngularKernel::constant(kInv4Pi);  // kappa = 1
  return params;
}

struct MomentPair {
  double value = 0.0;
  double se = 0.0;
};

MomentPair plain_moment(const std::vector<SampleRecord>& records, double p) {
  double mean = 0.0;
  for (const auto& r : records) mean += std::pow(norm(r.v), p);
  mean /= static_cast<double>(records.size());
  double var = 0.0;
  for (const auto& r : records) {
    const double d = std::pow(norm(r.v), p) - mean;
    var += d * d;
  }
  var /= static_cast<double>(records.size()) - 1.0;
  return {mean, std::sqrt(var / static_cast<double>(records.size()))};
}

// Self-normalized weighted moment with block-median error bars.
MomentPair weighted_moment(const std::vector<SampleRecord>& records, double p,
                           int blocks = 32) {
  std::vector<double> ratios;
  const size_t per_block = records.size() / static_cast<size_t>(blocks);
  for (int b = 0; b < blocks; ++b) {
    double num = 0.0, den = 0.0;
    for (size_t i = static_cast<size_t>(b) * per_block;
         i < static_cast<size_t>(b + 1) * per_block; ++i) {
      num += records[i].m * std::pow(norm(records[i].v), p);
      den += records[i].m;
    }
    ratios.push_back(num / den);
  }
  const MomEstimate est = median_of_means(ratios, blocks);
  return {est.value, est.std_error};
}

bool moments_agree(const MomentPair& a, const MomentPair& b, double n_sigma) {
  const double combined = std::sqrt(a.se * a.se + b.se * b.se);
  return std::fabs(a.value - b.value) <= n_sigma * combined;
}

std::vector<double> speeds_of(const std::vector<SampleRecord>& records) {
  std::vector<double> out(records.size());
  for (size_t i = 0; i < records.size(); ++i) out[i] = norm(records[i].v);
  return out;
}

std::vector<double> weights_of(const std::vector<SampleRecord>& records) {
  std::vector<double> out(records.size());
  for (size_t i = 0; i < records.size(); ++i) out[i] = records[i].m;
  return out;
}

// ---------------------------------------------------------------- criterion 1

CriterionResult criterion_kinematics(const AcceptanceScale& scale) {
  CriterionResult res{1, "exact kinematics of the collision map", false, "", 0.0};
  RngStream rng = RngStream::root(scale.seed).split(101);
  double worst_p = 0.0, worst_e = 0.0;
  for (uint64_t i = 0; i < scale.kinematics_triples; ++i) {
    const double mag = std::pow(10.0, 2.0 * rng.next_double() - 1.0);
    const Vec3 v = mag * rng.next_normal3();
    const Vec3 vs = mag * rng.next_normal3();
    const Vec3 sigma = rng.next_unit_vector();
    const auto [vp, vps] = post_collision(v, vs, sigma);
    const double dp = norm((vp + vps) - (v + vs));
    const double de =
        std::fabs((norm2(vp) + norm2(vps)) - (norm2(v) + norm2(vs)));
    worst_p = std::max(worst_p, dp / (1e-12 * (1.0 + norm(v) + norm(vs))));
    worst_e = std::max(worst_e, de / (1e-10 * (1.0 + norm2(v) + norm2(vs))));
  }
  res.pass = worst_p <= 1.0 && worst_e <= 1.0;
  res.detail = "momentum worst " + fmt(worst_p) + "x tol, energy worst " +
               fmt(worst_e) + "x tol over " +
               std::to_string(scale.kinematics_triples) + " triples";
  return res;
}

// ---------------------------------------------------------------- criterion 2

CriterionResult criterion_moment_identity(const AcceptanceScale& scale) {
  CriterionResult res{2, "per-collision second-moment identity", false, "", 0.0};
  std::vector<std::pair<std::string, AngularKernel>> kernels;
  kernels.emplace_back("constant", AngularKernel::constant(kInv4Pi));
  kernels.emplace_back("tabulated 1+u",
                       AngularKernel::tabulated({-1.0, 1.0}, {0.0, 2.0}));
  kernels.emplace_back("power(2,0.1)", AngularKernel::truncated_power(2.0, 0.1));
  const std::vector<std::pair<Vec3, Vec3>> pairs = {
      {{1, 0, 0}, {-1, 0, 0}},        {{0, 0, 0}, {1, 2, 2}},
      {{1, 1, 1}, {1, 1, 1}},         {{2, -1, 0.5}, {-0.3, 0.7, -2}},
      {{5, 0, 0}, {0, 3, 0}}};
  RngStream rng = RngStream::root(scale.seed).split(102);
  double worst = 0.0;
  bool ok = true;
  for (const auto& [kname, kernel] : kernels) {
    const double c = kernel.mean_cosine();
    for (const auto& [v, vs] : pairs) {
      const double closed =
          0.5 * (1.0 + c) * norm2(v) + 0.5 * (1.0 - c) * norm2(vs);
      double sum = 0.0, sum2 = 0.0;
      for (uint64_t i = 0; i < scale.sigma_draws; ++i) {
        const Vec3 sigma = sample_sigma(v, vs, kernel, rng);
        const double e = norm2(post_collision(v, vs, sigma).first);
        sum += e;
        sum2 += e * e;
      }
      const double n = static_cast<double>(scale.sigma_draws);
      const double mean = sum / n;
      const double sd = std::sqrt(std::max(0.0, sum2 / n - mean * mean));
      const double se = sd / std::sqrt(n);
      const double diff = std::fabs(mean - closed);
      if (se > 0.0) worst = std::max(worst, diff / se);
      ok = ok && diff <= 4.0 * se + 1e-12 * (1.0 + closed);
    }
  }
  res.pass = ok;
  res.detail = "3 kernels x 5 pairs, worst deviation " + fmt(worst) +
               " standard errors (limit 4)";
  return res;
}

// ---------------------------------------------------------------- criterion 3

CriterionResult criterion_mass_energy(const AcceptanceScale& scale) {
  CriterionResult res{3, "mass and energy of the weighted sampler", false, "", 0.0};
  const InitialLaw f0{1.0, VelocityLaw::gaussian({0, 0, 0}, 1.0 / 3.0)};
  const double e0 = f0.weighted_energy();  // = 1
  std::ostringstream detail;
  bool ok = true;
  int idx = 0;
  for (const double gamma : {0.0, 0.5, 1.0}) {
    const ModelParams params = unit_params(gamma, e0);
    const double t = 0.5 / (params.kernel.kappa() * (1.0 + e0) *
                            (1.0 + std::pow(e0, gamma / 2.0)));
    const BatchResult batch =
        batch_sample(t, scale.replicates, f0, params, scale.seed + 300 + idx,
                     1000000, scale.threads);
    const MomentReport mass = estimate_weighted_moment(batch.records, 0.0, 32);
    const MomentReport energy = estimate_weighted_moment(batch.records, 2.0, 32);
    const bool mass_ok =
        std::fabs(mass.median_of_means - 1.0) <= 3.0 * mass.ci_half_width;
    const bool energy_ok =
        std::fabs(energy.median_of_means - e0) <= 3.0 * energy.ci_half_width;
    ok = ok && mass_ok && energy_ok && batch.failures == 0;
    detail << "gamma=" << fmt(gamma, 2) << ": mass "
           << fmt(mass.median_of_means, 5) << "+-" << fmt(mass.ci_half_width, 2)
           << ", energy " << fmt(energy.median_of_means, 5) << "+-"
           << fmt(energy.ci_half_width, 2) << "; ";
    ++idx;
  }
  res.pass = ok;
  res.detail = detail.str() + "(targets 1 and e0=1 within 3 block-CIs)";
  return res;
}

// ---------------------------------------------------------------- criterion 4

CriterionResult criterion_counter_bound(const AcceptanceScale& scale) {
  CriterionResult res{4, "collision counter bound and no-jump probability",
                      false, "", 0.0};
  const double e0 = 1.0;
  const ModelParams params = unit_params(1.0, e0);
  const double rate_bar =
      params.kernel.kappa() * (1.0 + e0) * (1.0 + std::pow(e0, 0.5));
  struct Case {
    std::string name;
    InitialLaw f0;
    bool exact_reference;
  };
  const std::vector<Case> cases = {
      {"dirac", InitialLaw{1.0, VelocityLaw::point({1, 0, 0})}, true},
      {"gaussian", InitialLaw{1.0, VelocityLaw::gaussian({0, 0, 0}, 1.0 / 3.0)},
       false}};
  bool ok = true;
  std::ostringstream detail;
  int idx = 0;
  for (const Case& c : cases) {
    for (const double scale_t : {0.25, 0.5, 1.0}) {
      const double t = scale_t / rate_bar;
      const BatchResult batch = batch_sample(
          t, scale.replicates, c.f0, params, scale.seed + 400 + idx, 1000000,
          scale.threads);
      const double n = static_cast<double>(batch.records.size());
      double mean = 0.0, zero = 0.0;
      for (const auto& r : batch.records) {
        mean += static_cast<double>(r.n);
        if (r.n == 0) zero += 1.0;
      }
      mean /= n;
      double var = 0.0;
      for (const auto& r : batch.records) {
        const double d = static_cast<double>(r.n) - mean;
        var += d * d;
      }
      var /= n - 1.0;
      const double se = std::sqrt(var / n);
      const double bound = counter_bound(t, params);
      const bool bound_ok = mean <= bound + 4.0 * se;

      // Reference survival probability E[exp(-kappa Lambda(V0) t)].
      const double p_hat = zero / n;
      double expected = 0.0, expected_se = 0.0;
      if (c.exact_reference) {
        expected = std::exp(-params.kernel.kappa() *
                            lambda_rate({1, 0, 0}, params) * t);
      } else {
        RngStream qrng = RngStream::root(scale.seed).split(440 + idx);
        double sum = 0.0, sum2 = 0.0;
        for (uint64_t i = 0; i < scale.quadrature_draws; ++i) {
          const Vec3 v0 = c.f0.velocity.sample(qrng);
          const double x = std::exp(-params.kernel.kappa() *
                                    lambda_rate(v0, params) * t);
          sum += x;
          sum2 += x * x;
        }
        const double m = static_cast<double>(scale.quadrature_draws);
        expected = sum / m;
        expected_se = std::sqrt(
            std::max(0.0, sum2 / m - expected * expected) / m);
      }
      const double combined = std::sqrt(p_hat * (1.0 - p_hat) / n +
                                        expected_se * expected_se);
      const bool zero_ok = std::fabs(p_hat - expected) <= 4.0 * combined;
      ok = ok && bound_ok && zero_ok;
      if (!bound_ok || !zero_ok) {
        detail << c.name << "@t=" << fmt(t) << " mean n " << fmt(mean)
               << " vs bound " << fmt(bound) << ", P(n=0) " << fmt(p_hat, 5)
               << " vs " << fmt(expected, 5) << "; ";
      }
      ++idx;
    }
  }
  res.pass = ok;
  if (ok) {
    detail << "mean counter below the bound and P(N=0) matches the survival "
              "expectation on all 6 cases (4 sigma)";
  }
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------- criterion 5

CriterionResult criterion_triangle(const AcceptanceScale& scale) {
  CriterionResult res{5, "Maxwellian triangle agreement (gamma = 0)", false, "",
                      0.0};
  const AngularKernel kernel = AngularKernel::constant(kInv4Pi);
  const VelocityLaw law = VelocityLaw::gaussian({0, 0, 0}, 1.0 / 3.0);
  const InitialLaw f0{1.0, law};
  const ModelParams params = unit_params(0.0, f0.weighted_energy());
  const double t = 0.25;
  const uint64_t cap = 1000000;

  const BatchResult direct = batch_velocity_sample(
      t, scale.replicates, law, kernel, scale.seed + 501, cap, scale.threads);
  const BatchResult mixture = batch_wild_mixture(
      t, scale.replicates, law, kernel, scale.seed + 502, cap, scale.threads);
  const BatchResult weighted = batch_sample(
      t, scale.replicates, f0, params, scale.seed + 503, cap, scale.threads);

  const std::vector<double> sa = speeds_of(direct.records);
  const std::vector<double> sb = speeds_of(mixture.records);
  const std::vector<double> sc = speeds_of(weighted.records);
  const std::vector<double> ones_a(sa.size(), 1.0), ones_b(sb.size(), 1.0);
  const std::vector<double> wc = weights_of(weighted.records);

  const KsResult ks_ab = ks_two_sample(sa, sb);
  const KsResult ks_ac = ks_two_sample_weighted(sa, ones_a, sc, wc);
  const KsResult ks_bc = ks_two_sample_weighted(sb, ones_b, sc, wc);
  const bool ks_ok = ks_ab.p_value > 1e-3 && ks_ac.p_value > 1e-3 &&
                     ks_bc.p_value > 1e-3;

  bool mom_ok = true;
  for (const double p : {1.0, 2.0}) {
    const MomentPair ma = plain_moment(direct.records, p);
    const MomentPair mb = plain_moment(mixture.records, p);
    const MomentPair mc = weighted_moment(weighted.records, p);
    mom_ok = mom_ok && moments_agree(ma, mb, 3.0) && moments_agree(ma, mc, 3.0) &&
             moments_agree(mb, mc, 3.0);
  }
  res.pass = ks_ok && mom_ok;
  res.detail = "radial KS p: direct/mixture " + fmt(ks_ab.p_value, 3) +
               ", direct/weighted " + fmt(ks_ac.p_value, 3) +
               ", mixture/weighted " + fmt(ks_bc.p_value, 3) +
               "; moments pairwise within 3 sigma: " +
               (mom_ok ? "yes" : "no");
  return res;
}

// ---------------------------------------------------------------- criterion 6

CriterionResult criterion_wild_truncation(const AcceptanceScale&) {
  CriterionResult res{6, "Wild truncation identity", false, "", 0.0};
  double worst = 0.0;
  for (const double kappa : {1.0, 4.0 * std::numbers::pi}) {
    for (const double t : {0.05, 0.25, 1.0, 3.0}) {
      double sum = 0.0, comp = 0.0;
      for (uint64_t n = 1; n <= 200; ++n) {
        const double y = wild_weight(n, t, kappa) - comp;
        const double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
        const double closed =
            1.0 - std::pow(-std::expm1(-kappa * t), static_cast<double>(n));
        worst = std::max(worst, std::fabs(sum - closed));
      }
    }
  }
  res.pass = worst <= 1e-14;
  res.detail = "max |partial sum - closed form| = " + fmt(worst, 3) +
               " over N <= 200, two kappas, four t";
  return res;
}

// ---------------------------------------------------------------- criterion 7

struct SeriesCase {
  std::string name;
  double gamma;
  InitialLaw f0;
  bool check_two_leaf_closed_form;
};

CriterionResult criterion_series(const AcceptanceScale& scale) {
  CriterionResult res{7, "tree series expansion", false, "", 0.0};
  const std::vector<SeriesCase> cases = {
      {"dirac gamma=0.5", 0.5, InitialLaw{1.0, VelocityLaw::point({1, 0, 0})},
       false},
      {"gauss gamma=0.5", 0.5,
       InitialLaw{1.0, VelocityLaw::gaussian({0, 0, 0}, 1.0 / 3.0)}, false},
      {"dirac gamma=0", 0.0, InitialLaw{1.0, VelocityLaw::point({1, 0, 0})},
       true}};
  SeriesBudget budget;
  budget.n_particles = scale.series_particles;
  budget.n_time = scale.series_strata;

  bool ok = true;
  std::ostringstream detail;
  int idx = 0;
  for (const SeriesCase& sc : cases) {
    const double e0 = sc.f0.weighted_energy();
    const ModelParams params = unit_params(sc.gamma, e0);
    const double rate_bar = params.kernel.kappa() * (1.0 + e0) *
                            (1.0 + std::pow(e0, sc.gamma / 2.0));
    const double t = 0.5 / rate_bar;

    const SeriesResult series =
        truncated_series(t, 7, sc.f0, params, budget, scale.series_reps,
                         scale.seed + 700 + idx, scale.threads);
    const BatchResult batch =
        batch_sample(t, scale.replicates, sc.f0, params, scale.seed + 750 + idx,
                     1000000, scale.threads);

    // (i) nonnegative masses, cumulative mass nondecreasing in k, <= 1 + 4 sigma.
    double total = 0.0, se2 = 0.0;
    bool nonneg = true;
    double prev_cum = 0.0;
    bool monotone = true;
    for (const int k : {1, 3, 5, 7}) {
      double cum = 0.0;
      for (const TreeMass& tm : series.masses) {
        if (tm.tree.node_count() <= k) cum += tm.mass;
      }
      if (cum < prev_cum - 1e-12) monotone = false;
      prev_cum = cum;
    }
    for (const TreeMass& tm : series.masses) {
      nonneg = nonneg && tm.mass >= 0.0;
      total += tm.mass;
      se2 += tm.std_error * tm.std_error;
    }
    const bool bounded = total <= 1.0 + 4.0 * std::sqrt(se2) + 1e-9;

    // (ii) per-tree masses match sampler frequencies.
    const auto rows = tree_probability_check(series, batch.records, 4.0);
    int flags = 0;
    for (const auto& row : rows) flags += row.flagged ? 1 : 0;

    // Consistency of the truncated measure itself: its self-normalized
    // second radial moment agrees with the sampler estimate.
    double sm2 = 0.0;
    for (double x : series.rep_second_moment) sm2 += x;
    sm2 /= static_cast<double>(series.rep_second_moment.size());
    double sm2_var = 0.0;
    for (double x : series.rep_second_moment) sm2_var += (x - sm2) * (x - sm2);
    sm2_var /= static_cast<double>(series.rep_second_moment.size()) - 1.0;
    const double sm2_se =
        std::sqrt(sm2_var / static_cast<double>(series.rep_second_moment.size()));
    const MomentPair sampler_m2 = weighted_moment(batch.records, 2.0);
    const bool moment_ok =
        std::fabs(sm2 - sampler_m2.value) <=
        3.0 * std::sqrt(sm2_se * sm2_se + sampler_m2.se * sampler_m2.se) + 1e-12;

    // (iii) two-leaf tree mass against an independent quadrature oracle
    // (constant-rate case: J rate kappa*L*e^{-2 kappa L s}, damped to t).
    bool closed_ok = true;
    if (sc.check_two_leaf_closed_form) {
      const double rate =
          params.kernel.kappa() * lambda_rate({1, 0, 0}, params);
      const auto integrand = [&](double s) {
        return rate * std::exp(-2.0 * rate * s) * std::exp(-rate * (t - s));
      };
      const int nq = 4096;
      double quad = integrand(0.0) + integrand(t);
      for (int i = 1; i < nq; ++i) {
        quad += (i % 2 == 1 ? 4.0 : 2.0) * integrand(t * i / nq);
      }
      quad *= t / (3.0 * nq);
      double two_leaf = -1.0;
      for (const TreeMass& tm : series.masses) {
        if (tm.tree.code() == "100") two_leaf = tm.mass;
      }
      closed_ok = std::fabs(two_leaf - quad) <= 0.01 * quad;
    }

    ok = ok && nonneg && monotone && bounded && flags == 0 && moment_ok &&
         closed_ok;
    detail << sc.name << ": total mass " << fmt(total, 5) << ", flags "
           << flags << "/" << rows.size() << ", |V|^2 " << fmt(sm2, 4)
           << " vs sampler " << fmt(sampler_m2.value, 4)
           << (sc.check_two_leaf_closed_form
                   ? std::string(", two-leaf vs quadrature ") +
                         (closed_ok ? "ok" : "OFF")
                   : std::string())
           << "; ";
    ++idx;
  }
  res.pass = ok;
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------- criterion 8

CriterionResult criterion_oracle(const AcceptanceScale& scale) {
  CriterionResult res{8, "agreement with the particle oracle (hard spheres)",
                      false, "", 0.0};
  const InitialLaw f0{1.0, VelocityLaw::gaussian({0, 0, 0}, 1.0 / 3.0)};
  const double e0 = f0.weighted_energy();
  const ModelParams params = unit_params(1.0, e0);
  const double rate_bar =
      params.kernel.kappa() * (1.0 + e0) * (1.0 + std::pow(e0, 0.5));
  CompareThresholds thresholds;
  thresholds.ks_alpha = 1e-3;
  thresholds.moment_n_sigma = 3.0;
  thresholds.w1_max = kSlicedW1Max;

  bool ok = true;
  std::ostringstream detail;
  int idx = 0;
  for (const double scale_t : {0.25, 0.75}) {
    const double t = scale_t / rate_bar;
    const BatchResult batch =
        batch_sample(t, scale.replicates, f0, params, scale.seed + 800 + idx,
                     1000000, scale.threads);
    const DsmcResult oracle =
        run_dsmc(scale.dsmc_particles, t, 0.0, f0.velocity, params,
                 RngStream::root(scale.seed).split(850 + idx));
    const OracleReport report = weighted_vs_oracle_report(
        batch.records, oracle.velocities, 16, thresholds, scale.seed + 870 + idx);
    ok = ok && report.pass;
    detail << "t=" << fmt(t) << ": KS p " << fmt(report.radial_ks.p_value, 3)
           << ", W1 " << fmt(report.sliced_w1_value, 3) << " (max "
           << fmt(thresholds.w1_max, 3) << "), moments "
           << (report.moments[0].pass && report.moments[1].pass ? "ok" : "OFF")
           << "; ";
    ++idx;
  }
  res.pass = ok;
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------- criterion 9

CriterionResult criterion_combinatorics(const AcceptanceScale&) {
  CriterionResult res{9, "tree enumeration and codec", false, "", 0.0};
  const std::vector<OrderedTree> trees = enumerate_trees(11);
  std::vector<int> counts(7, 0);
  for (const OrderedTree& t : trees) {
    counts[static_cast<size_t>(t.leaf_count())] += 1;
  }
  const std::vector<int> catalan = {0, 1, 1, 2, 5, 14, 42};
  bool counts_ok = true;
  for (int l = 1; l <= 6; ++l) counts_ok = counts_ok && counts[l] == catalan[l];

  bool codec_ok = true;
  for (const OrderedTree& t : enumerate_trees(9)) {
    const auto parsed = OrderedTree::parse(t.code());
    codec_ok = codec_ok && parsed.has_value() && *parsed == t;
    if (!t.is_leaf()) {
      const auto [l, r] = t.children();
      codec_ok = codec_ok && OrderedTree::node(l, r) == t;
    }
  }
  for (const char* bad : {"", "1", "00", "01", "10", "100100", "abc", "1001"}) {
    codec_ok = codec_ok && !OrderedTree::parse(bad).has_value();
  }
  res.pass = counts_ok && codec_ok;
  res.detail = std::string("Catalan counts ") + (counts_ok ? "ok" : "WRONG") +
               " (leaves 1..6), codec round-trip to 9 nodes " +
               (codec_ok ? "ok" : "WRONG");
  return res;
}

// --------------------------------------------------------------- criterion 10

RunConfig determinism_config(const AcceptanceScale& scale, const std::string& dir) {
  RunConfig cfg;
  cfg.gamma = 1.0;
  cfg.e0.reset();
  cfg.kernel = "constant(0.07957747154594767)";
  cfg.f0 = "gaussian(0,0,0,0.3333333333333333)";
  cfg.t_grid = {0.05};
  cfg.n_rep = 512;
  cfg.base_seed = scale.seed + 1000;
  cfg.cap = 100000;
  cfg.threads = scale.threads;
  cfg.series_k = 3;
  cfg.series_particles = 256;
  cfg.series_time_strata = 16;
  cfg.series_reps = 4;
  cfg.dsmc_n = 2000;
  cfg.mom_blocks = 8;
  // Agreement thresholds are calibrated for 1e5-sample runs; widen them so
  // the smoke-scale compare step reports honestly instead of crying wolf.
  cfg.w1_threshold = 0.5;
  cfg.out_dir = dir;
  return cfg;
}

CriterionResult criterion_determinism(const AcceptanceScale& scale,
                                      const std::string& out_dir) {
  CriterionResult res{10, "bitwise determinism of the pipeline", false, "", 0.0};
  const fs::path base = out_dir.empty() ? fs::path("acceptance_out")
                                        : fs::path(out_dir);
  const fs::path dir_a = base / "determinism_a";
  const fs::path dir_b = base / "determinism_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  run_pipeline(determinism_config(scale, dir_a.string()));
  run_pipeline(determinism_config(scale, dir_b.string()));

  // Relative file lists must match; everything except timing.json must be
  // byte-identical.
  auto listing = [](const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() &&
          entry.path().filename() != "timing.json") {
        files.push_back(fs::relative(entry.path(), root));
      }
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  const auto files_a = listing(dir_a);
  const auto files_b = listing(dir_b);
  bool same = files_a == files_b && !files_a.empty();
  size_t mismatches = 0;
  if (same) {
    for (const auto& rel : files_a) {
      if (read_text_file((dir_a / rel).string()) !=
          read_text_file((dir_b / rel).string())) {
        ++mismatches;
        same = false;
      }
    }
  }
  res.pass = same;
  res.detail = std::to_string(files_a.size()) + " artifacts compared, " +
               std::to_string(mismatches) + " byte mismatches";
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceScale& scale,
                                            const std::string& out_dir) {
  using Fn = std::function<CriterionResult()>;
  const std::vector<Fn> criteria = {
      [&] { return criterion_kinematics(scale); },
      [&] { return criterion_moment_identity(scale); },
      [&] { return criterion_mass_energy(scale); },
      [&] { return criterion_counter_bound(scale); },
      [&] { return criterion_triangle(scale); },
      [&] { return criterion_wild_truncation(scale); },
      [&] { return criterion_series(scale); },
      [&] { return criterion_oracle(scale); },
      [&] { return criterion_combinatorics(scale); },
      [&] { return criterion_determinism(scale, out_dir); },
  };
  std::vector<CriterionResult> results;
  for (const Fn& fn : criteria) {
    const auto start = Clock::now();
    CriterionResult r = fn();
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    // Pinned runtime limits: criterion 1 must finish in 5 s, criterion 3 in
    // 10 minutes.
    if (r.index == 1 && r.seconds >= 5.0) {
      r.pass = false;
      r.detail += " [runtime " + fmt(r.seconds, 3) + " s >= 5 s]";
    }
    if (r.index == 3 && r.seconds > 600.0) {
      r.pass = false;
      r.detail += " [runtime " + fmt(r.seconds, 4) + " s > 600 s]";
    }
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.index << ": "
              << r.name << " (" << fmt(r.seconds, 3) << " s) -- " << r.detail
              << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

int run_acceptance_cli(const RunConfig& cfg) {
  AcceptanceScale scale;
  scale.threads = cfg.threads;
  const std::vector<CriterionResult> results =
      run_acceptance(scale, cfg.out_dir);

  fs::create_directories(cfg.out_dir);
  std::ostringstream txt;
  nlohmann::json report;
  report["report_schema_version"] = kReportSchemaVersion;
  nlohmann::json rows = nlohmann::json::array();
  int failed = 0;
  for (const CriterionResult& r : results) {
    txt << (r.pass ? "PASS" : "FAIL") << " criterion " << r.index << ": "
        << r.name << " -- " << r.detail << "\n";
    rows.push_back({{"index", r.index},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"detail", r.detail}});
    failed += r.pass ? 0 : 1;
  }
  report["criteria"] = rows;
  report["failed"] = failed;
  write_text_file((fs::path(cfg.out_dir) / "acceptance.txt").string(), txt.str());
  write_text_file((fs::path(cfg.out_dir) / "acceptance_report.json").string(),
                  report.dump(2) + "\n");
  return failed;
}

}  // namespace wildsim
