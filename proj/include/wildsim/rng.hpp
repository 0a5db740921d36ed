#pragma once

#include <cstdint>

#include "wildsim/vec3.hpp"

namespace wildsim {

// Counter-based splittable random stream (Philox 4x32-10).
//
// A stream is identified by a 64-bit key; draws consume a counter, so a
// stream never carries hidden state beyond (key, counter). Child streams are
// derived from (key, index) in a separate counter domain, which makes the
// recursive samplers reproducible: the partner simulated at jump j of a
// stream always sees the same randomness, independent of everything drawn
// the parent side.
class RngStream {
 public:
  RngStream() = default;

  // Stream for a user-facing seed. Seeds 0,1,2,... give unrelated keys.
  static RngStream root(uint64_t seed);

  // Stream with an explicit key (used to re-derive a recorded replicate).
  static RngStream from_key(uint64_t key);

  // Independent child stream; deterministic in (key, index).
  RngStream split(uint64_t index) const;

  uint64_t key() const { return key_; }

  uint64_t next_u64();

  // Uniform on [0,1).
  double next_double();

  // Uniform on (0,1]; safe to pass to log().
  double next_double_open();

  // Uniform on {0,...,n-1}, n >= 1.
  uint64_t next_index(uint64_t n);

  // Exponential with the given rate > 0.
  double next_exponential(double rate);

  // Standard normal (Box-Muller; consumes two uniforms).
  double next_normal();

  Vec3 next_normal3();

  // Uniform on the unit sphere.
  Vec3 next_unit_vector();

  // Poisson via Knuth inversion; intended for small means.
  uint64_t next_poisson(double mean);

 private:
  uint64_t key_ = 0;
  uint64_t ctr_ = 0;
  uint64_t cached_ = 0;
  bool has_cached_ = false;
};

}  // namespace wildsim
