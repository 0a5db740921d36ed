#pragma once

#include <functional>

#include "wildsim/collision.hpp"

namespace wildsim {

// Weighted state y = (m, v) with Monte Carlo weight m > 0. The m-moment of
// the law of y recovers the physical velocity density.
struct WeightedState {
  double m = 1.0;
  Vec3 v;
};

// State-dependent majorant jump rate factor
//   Lambda(v) = (1+e0)(1+|v|^gamma) >= 1,
// which dominates (1+e0)|v-v*|^gamma / (1+|v*|^2) uniformly in v*.
// Note |v|^0 == 1 (also at v = 0), so gamma = 0 gives the constant rate
// 2(1+e0) of the Maxwellian case.
double lambda_rate(const Vec3& v, const ModelParams& params);

// Acceptance probability of a real (non-fictitious) jump:
//   q(v,v*) = (1+e0)|v-v*|^gamma / ((1+|v*|^2) Lambda(v)) in [0,1].
double acceptance_q(const Vec3& v, const Vec3& v_star, const ModelParams& params);

// Post-collision map on weighted states:
//   h(y,y*,z) = ( m m* (1+|v*|^2)/(1+e0),  v + [v'(v,v*,sigma)-v] 1{a<=q} ).
// The comparison is inclusive. Fictitious jumps (a > q) leave the velocity
// unchanged but still apply the weight update.
WeightedState collision_map(const WeightedState& y, const WeightedState& y_star,
                            const CollisionAux& z, const ModelParams& params);

struct GeneratorEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of the weak-form generator
//   B Phi(y,y*) = Lambda(v) int_H [Phi(h(y,y*,z)) - Phi(y)] nu(dz),
// nu(dz) = b(cos)dsigma da with total mass kappa. Test utility only; the
// simulation itself never evaluates this.
GeneratorEstimate generator_b(const std::function<double(const WeightedState&)>& phi,
                              const WeightedState& y, const WeightedState& y_star,
                              const ModelParams& params, size_t n_mc,
                              RngStream& rng);

}  // namespace wildsim
