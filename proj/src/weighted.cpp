#include "wildsim/weighted.hpp"

#include <cmath>
#include <stdexcept>

namespace wildsim {

double lambda_rate(const Vec3& v, const ModelParams& params) {
  return (1.0 + params.e0) * (1.0 + std::pow(norm(v), params.gamma));
}

double acceptance_q(const Vec3& v, const Vec3& v_star, const ModelParams& params) {
  const double num = (1.0 + params.e0) * std::pow(norm(v - v_star), params.gamma);
  return num / ((1.0 + norm2(v_star)) * lambda_rate(v, params));
}

WeightedState collision_map(const WeightedState& y, const WeightedState& y_star,
                            const CollisionAux& z, const ModelParams& params) {
  WeightedState out;
  out.m = y.m * y_star.m * (1.0 + norm2(y_star.v)) / (1.0 + params.e0);
  if (z.a <= acceptance_q(y.v, y_star.v, params)) {
    out.v = post_collision(y.v, y_star.v, z.sigma).first;
  } else {
    out.v = y.v;
  }
  return out;
}

GeneratorEstimate generator_b(const std::function<double(const WeightedState&)>& phi,
                              const WeightedState& y, const WeightedState& y_star,
                              const ModelParams& params, size_t n_mc,
                              RngStream& rng) {
  if (n_mc < 1) {
    throw std::invalid_argument("generator_b needs n_mc >= 1");
  }
  const double scale = params.kernel.kappa() * lambda_rate(y.v, params);
  const double phi_y = phi(y);
  double sum = 0.0, sum2 = 0.0;
  for (size_t i = 0; i < n_mc; ++i) {
    const CollisionAux z = sample_collision_aux(y.v, y_star.v, params.kernel, rng);
    const double d = phi(collision_map(y, y_star, z, params)) - phi_y;
    sum += d;
    sum2 += d * d;
  }
  const double n = static_cast<double>(n_mc);
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  GeneratorEstimate est;
  est.value = scale * mean;
  est.std_error = scale * std::sqrt(var / n);
  return est;
}

}  // namespace wildsim
