#pragma once

#include <vector>

#include "wildsim/rng.hpp"
#include "wildsim/weighted.hpp"

namespace wildsim {

// Weighted-particle representation of a finite nonnegative measure, either
// on the state space E (birth time s unused, kept at 0) or on R+ x E.
struct Particle {
  double w = 0.0;  // nonnegative weight
  double s = 0.0;  // birth time
  WeightedState y;
};

struct ParticleCloud {
  std::vector<Particle> particles;

  double total_mass() const;
  bool empty() const { return particles.empty(); }
  size_t size() const { return particles.size(); }
};

// Systematic resampling to n_out equally weighted particles (one uniform
// drives all picks). Preserves total mass exactly; used only for memory
// control, never by default.
ParticleCloud systematic_resample(const ParticleCloud& cloud, size_t n_out,
                                  RngStream& rng);

}  // namespace wildsim
