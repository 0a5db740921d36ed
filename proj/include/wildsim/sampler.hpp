#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wildsim/initial_law.hpp"
#include "wildsim/parallel.hpp"
#include "wildsim/rng.hpp"
#include "wildsim/weighted.hpp"

namespace wildsim {

// One exact draw from the time-t law: the weighted state (m, v), the
// collision counter n, and the realized ordered collision tree. seed is the
// stream key that reproduces the record.
struct SampleRecord {
  uint64_t seed = 0;
  double t = 0.0;
  double m = 1.0;
  Vec3 v;
  uint64_t n = 0;
  std::string tree = "0";
};

struct BatchResult {
  std::vector<SampleRecord> records;
  uint64_t failures = 0;  // replicates discarded for exceeding the cap
};

// Exact recursive sampler of the weighted kinetic equation. The particle
// starts from an F0 draw, jumps at rate kappa*Lambda(v), and at each jump
// collides with an independent partner simulated by the same procedure at
// the absolute jump time. For e0 equal to the energy of f0, the output
// satisfies E[M_t 1{V_t in A}] = f_t(A) with f_t the Boltzmann solution.
// Throws CapExceededError when the collision count would exceed cap.
SampleRecord sample_state(double t, const InitialLaw& f0, const ModelParams& params,
                          RngStream stream, uint64_t cap);

// Upper bound exp(kappa (1+e0)(1+e0^(gamma/2)) t) - 1 for the mean collision
// counter when e0 is the initial energy.
double counter_bound(double t, double kappa, double gamma, double e0);
double counter_bound(double t, const ModelParams& params);

// n_rep independent replicates; replicate i runs on the stream derived from
// (base_seed, i), so the output is identical for any thread count and
// disjoint seed ranges give disjoint, reproducible record sets. Replicates
// that exceed the cap are counted in failures and not returned.
BatchResult batch_sample(double t, uint64_t n_rep, const InitialLaw& f0,
                         const ModelParams& params, uint64_t base_seed,
                         uint64_t cap, int threads = 0);

// Shared replicate driver: fn(stream, i) produces a record or nullopt when
// the replicate hit the cap.
template <class Fn>
BatchResult batch_generic(uint64_t n_rep, uint64_t base_seed, int threads, Fn&& fn) {
  BatchResult out;
  std::vector<std::optional<SampleRecord>> slots(n_rep);
  const RngStream base = RngStream::root(base_seed);
  parallel_for(n_rep, threads, [&](uint64_t i) {
    slots[i] = fn(base.split(i), i);
  });
  out.records.reserve(n_rep);
  for (auto& slot : slots) {
    if (slot.has_value()) {
      out.records.push_back(std::move(*slot));
    } else {
      ++out.failures;
    }
  }
  return out;
}

}  // namespace wildsim
