#include "wildsim/cloud.hpp"

#include <stdexcept>

#include "wildsim/errors.hpp"

namespace wildsim {

double ParticleCloud::total_mass() const {
  // Kahan summation; particle counts get large and masses feed identities
  // tested at 1e-12.
  double sum = 0.0, comp = 0.0;
  for (const Particle& p : particles) {
    const double y = p.w - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

ParticleCloud systematic_resample(const ParticleCloud& cloud, size_t n_out,
                                  RngStream& rng) {
  if (cloud.empty()) throw EmptyCloudError("resampling an empty cloud");
  if (n_out < 1) throw std::invalid_argument("resample needs n_out >= 1");
  const double total = cloud.total_mass();
  ParticleCloud out;
  if (total <= 0.0) return out;
  out.particles.reserve(n_out);
  const double step = total / static_cast<double>(n_out);
  double pointer = rng.next_double() * step;
  double acc = 0.0;
  size_t i = 0;
  for (size_t k = 0; k < n_out; ++k) {
    const double target = pointer + static_cast<double>(k) * step;
    while (i + 1 < cloud.size() && acc + cloud.particles[i].w < target) {
      acc += cloud.particles[i].w;
      ++i;
    }
    Particle p = cloud.particles[i];
    p.w = step;
    out.particles.push_back(p);
  }
  return out;
}

}  // namespace wildsim
