#pragma once

#include <cstdint>

#include "wildsim/initial_law.hpp"
#include "wildsim/sampler.hpp"
#include "wildsim/tree.hpp"

namespace wildsim {

// Maxwellian-molecule machinery: the constant-rate recursive sampler, the
// Wild series weights, and direct sampling of the iterated collision
// operators Q_n. Everything here is unweighted (m = 1); it doubles as a
// cross-validation target for the weighted sampler at gamma = 0.

// Recursive sampler with constant jump rate kappa and plain collisions
// v <- (v + v* + |v-v*| sigma)/2; V_t follows the Maxwellian solution f_t.
// Identical record shape, determinism and cap contract as the weighted
// sampler, with m fixed to 1.
SampleRecord velocity_sample(double t, const VelocityLaw& f0,
                             const AngularKernel& kernel, RngStream stream,
                             uint64_t cap);

BatchResult batch_velocity_sample(double t, uint64_t n_rep, const VelocityLaw& f0,
                                  const AngularKernel& kernel, uint64_t base_seed,
                                  uint64_t cap, int threads = 0);

// Wild series weight e^{-kappa t}(1 - e^{-kappa t})^{n-1} of the n-th
// iterate, n >= 1. The weights sum to 1 over n.
double wild_weight(uint64_t n, double t, double kappa);

// McKean tree weight e^{-kappa t}(1 - e^{-kappa t})^{leaves-1}: the
// probability that a particle at time t has the given ordered collision
// tree.
double tree_weight(const OrderedTree& tree, double t, double kappa);

// Draw from Q_n(f0): n = 1 is an f0 draw; for n >= 2 split n into
// k + (n-k) with k uniform on {1,...,n-1}, draw the two factors
// recursively and collide them. Runs on an explicit stack; throws
// CapExceededError if n > cap.
Vec3 sample_from_qn(uint64_t n, const VelocityLaw& f0, const AngularKernel& kernel,
                    RngStream& rng, uint64_t cap = 1000000);

// Geometric order N with P(N = n) = wild_weight(n, t, kappa), sampled by
// exact inversion of the closed-form CDF 1 - (1 - e^{-kappa t})^N.
uint64_t sample_wild_order(double t, double kappa, RngStream& rng);

// Wild mixture sampler: N ~ geometric, then Q_N. Distributed as f_t, like
// velocity_sample but through the series route. Records the realized
// recursion tree (N - 1 internal nodes).
SampleRecord sample_wild_mixture(double t, const VelocityLaw& f0,
                                 const AngularKernel& kernel, RngStream stream,
                                 uint64_t cap);

BatchResult batch_wild_mixture(double t, uint64_t n_rep, const VelocityLaw& f0,
                               const AngularKernel& kernel, uint64_t base_seed,
                               uint64_t cap, int threads = 0);

}  // namespace wildsim
