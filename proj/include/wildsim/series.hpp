#pragma once

#include <cstdint>
#include <vector>

#include "wildsim/cloud.hpp"
#include "wildsim/initial_law.hpp"
#include "wildsim/sampler.hpp"
#include "wildsim/tree.hpp"

namespace wildsim {

// Tree-indexed series expansion of the weighted kinetic solution: the
// bilinear collision operator Q, the survival damping Gamma_t, the
// recursively defined tree measures J, and the k-node truncation, all on
// weighted-particle representations.

// Importance-sampled application of
//   Q(F,G)(A) = int int int Lambda(v) 1{h(y,y*,z) in A} nu(dz) G(dy*) F(dy):
// picks y from F biased by w*Lambda, y* from G biased by w*, collides, and
// spreads the exact total mass kappa * G(E) * int Lambda dF over n_out
// output particles. Throws EmptyCloudError on empty inputs; zero-mass
// inputs give an empty (zero-mass) cloud.
ParticleCloud q_operator(const ParticleCloud& f, const ParticleCloud& g,
                         const ModelParams& params, size_t n_out, RngStream& rng);

// Gamma_t: keeps particles born at s <= t, damps their weight by
// exp(-kappa Lambda(v) (t - s)), and drops the time coordinate.
ParticleCloud gamma_damp(const ParticleCloud& j, double t, const ModelParams& params);

// Budget for the J recursion. Particles per node halve with depth (floored)
// while time strata shrink by 4 per level; both are deterministic in the
// node depth.
struct SeriesBudget {
  size_t n_particles = 2048;
  size_t n_time = 32;
  size_t particle_floor = 64;
  size_t time_floor = 8;

  size_t particles_at(int depth) const;
  size_t strata_at(int depth) const;
};

// Particle estimate of the tree measure J_tree(F0) on [0,t] x E:
//   J_leaf = delta_0 x F0,
//   J_tree(ds,dx) = ds Q(Gamma_s(J_left), Gamma_s(J_right))(dx),
// with the time integral discretized by stratified midpoints (deterministic
// strata, stochastic content).
ParticleCloud j_measure(const OrderedTree& tree, double t, const InitialLaw& f0,
                        const ModelParams& params, const SeriesBudget& budget,
                        RngStream& rng);

struct TreeMass {
  OrderedTree tree;
  double mass = 0.0;       // mean of Gamma_t(J_tree)(E) over the replicates
  double std_error = 0.0;  // standard error over the replicates
};

struct SeriesResult {
  ParticleCloud cloud;  // union over trees, scaled so cloud mass = sum of masses
  std::vector<TreeMass> masses;
  // Per-replicate self-normalized second radial moment of the truncated
  // measure, (sum w m |v|^2) / (sum w m) over all trees; mean and scatter
  // give an honest error bar for consistency checks against the sampler.
  std::vector<double> rep_second_moment;
};

// Truncated series F_t^k = sum over trees with at most k nodes of
// Gamma_t(J_tree(F0)). Each tree's mass is estimated from `reps`
// independent replicates (mean and standard error). Deterministic in
// (seed, budget); trees and replicates run in parallel.
SeriesResult truncated_series(double t, int k, const InitialLaw& f0,
                              const ModelParams& params, const SeriesBudget& budget,
                              int reps, uint64_t seed, int threads = 0);

struct TreeCheckRow {
  std::string code;
  int leaves = 0;
  double series_mass = 0.0;
  double series_se = 0.0;
  double frequency = 0.0;
  double frequency_se = 0.0;
  bool flagged = false;
};

// Compares the per-tree series masses against the empirical frequency of
// each tree among perfect-sampler records. A row is flagged when the
// difference exceeds n_sigma combined standard errors; the series mass of
// tree T is the probability that the sampler realizes exactly T.
std::vector<TreeCheckRow> tree_probability_check(const SeriesResult& series,
                                                 const std::vector<SampleRecord>& records,
                                                 double n_sigma);

}  // namespace wildsim
