#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wildsim/initial_law.hpp"
#include "wildsim/sampler.hpp"
#include "wildsim/stats.hpp"

namespace wildsim {

// Independent stochastic-particle oracle in the Nanbu style: an N-particle
// system whose single-particle law tracks the weak Boltzmann dynamics. Used
// only to cross-validate the recursive samplers; shares nothing with them
// beyond the collision kinematics.

struct DsmcResult {
  std::vector<Vec3> velocities;
  int steps = 0;
  double dt_used = 0.0;
  uint64_t candidates = 0;
  uint64_t accepted = 0;
};

// Runs to time t in equal steps of length <= dt (dt <= 0 picks the default
// 0.05/(kappa * majorant)). Per step, each particle draws a Poisson number
// of candidate partners at the majorized rate kappa*G with
// G = (2 max_speed)^gamma, accepts with probability |v_i-v_j|^gamma / G and
// then replaces only v_i by the post-collision velocity (one-sided update).
// All candidates read the pre-step snapshot. Throws StabilityViolationError
// when dt * kappa * G exceeds 0.5.
DsmcResult run_dsmc(size_t n_particles, double t, double dt, const VelocityLaw& f0,
                    const ModelParams& params, RngStream rng);

struct MomentComparison {
  std::string name;
  double weighted_value = 0.0;
  double weighted_se = 0.0;
  double oracle_value = 0.0;
  double oracle_se = 0.0;
  double n_sigma = 0.0;  // |difference| in combined standard errors
  bool pass = false;
};

struct CompareThresholds {
  double ks_alpha = 1e-3;
  double moment_n_sigma = 3.0;
  double w1_max = 0.02;
  int blocks = 32;
};

struct OracleReport {
  KsResult radial_ks;
  bool ks_pass = false;
  std::vector<MomentComparison> moments;  // |V| and |V|^2
  double sliced_w1_value = 0.0;
  bool w1_pass = false;
  bool pass = false;
};

// Compares the self-normalized weighted empirical measure of the records
// against the oracle's plain empirical measure: radial KS, first and second
// radial moments with block error bars, and sliced Wasserstein-1 over
// n_proj directions.
OracleReport weighted_vs_oracle_report(std::span<const SampleRecord> records,
                                       std::span<const Vec3> oracle, int n_proj,
                                       const CompareThresholds& thresholds,
                                       uint64_t seed);

}  // namespace wildsim
