#include "wildsim/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "wildsim/detail/recursive_engine.hpp"

namespace wildsim {

namespace {

struct WeightedModel {
  const InitialLaw& f0;
  const ModelParams& params;
  double kappa;

  WeightedState sample_initial(RngStream& rng) const { return f0.sample(rng); }

  double jump_rate(const WeightedState& y) const {
    return kappa * lambda_rate(y.v, params);
  }

  WeightedState collide(const WeightedState& self, const WeightedState& partner,
                        RngStream& rng) const {
    const CollisionAux z =
        sample_collision_aux(self.v, partner.v, params.kernel, rng);
    return collision_map(self, partner, z, params);
  }
};

thread_local detail::TreeArena t_arena;

}  // namespace

SampleRecord sample_state(double t, const InitialLaw& f0, const ModelParams& params,
                          RngStream stream, uint64_t cap) {
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("t must be finite and >= 0");
  }
  params.validate();
  const WeightedModel model{f0, params, params.kernel.kappa()};
  t_arena.clear();
  const auto outcome =
      detail::run_recursive<WeightedState>(t, model, stream, cap, t_arena);
  SampleRecord rec;
  rec.seed = stream.key();
  rec.t = t;
  rec.m = outcome.state.m;
  rec.v = outcome.state.v;
  rec.n = outcome.n;
  rec.tree = t_arena.code(outcome.tree);
  return rec;
}

double counter_bound(double t, double kappa, double gamma, double e0) {
  return std::expm1(kappa * (1.0 + e0) * (1.0 + std::pow(e0, gamma / 2.0)) * t);
}

double counter_bound(double t, const ModelParams& params) {
  return counter_bound(t, params.kernel.kappa(), params.gamma, params.e0);
}

BatchResult batch_sample(double t, uint64_t n_rep, const InitialLaw& f0,
                         const ModelParams& params, uint64_t base_seed,
                         uint64_t cap, int threads) {
  if (n_rep < 1) throw std::invalid_argument("n_rep must be >= 1");
  return batch_generic(n_rep, base_seed, threads,
                       [&](RngStream stream, uint64_t) -> std::optional<SampleRecord> {
                         try {
                           return sample_state(t, f0, params, stream, cap);
                         } catch (const CapExceededError&) {
                           return std::nullopt;
                         }
                       });
}

}  // namespace wildsim
