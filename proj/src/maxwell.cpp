#include "wildsim/maxwell.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wildsim/collision.hpp"
#include "wildsim/detail/recursive_engine.hpp"
#include "wildsim/errors.hpp"

namespace wildsim {

namespace {

struct MaxwellModel {
  const VelocityLaw& f0;
  const AngularKernel& kernel;
  double kappa;

  Vec3 sample_initial(RngStream& rng) const { return f0.sample(rng); }

  double jump_rate(const Vec3&) const { return kappa; }

  Vec3 collide(const Vec3& self, const Vec3& partner, RngStream& rng) const {
    const Vec3 sigma = sample_sigma(self, partner, kernel, rng);
    return post_collision(self, partner, sigma).first;
  }
};

thread_local detail::TreeArena t_arena;

}  // namespace

SampleRecord velocity_sample(double t, const VelocityLaw& f0,
                             const AngularKernel& kernel, RngStream stream,
                             uint64_t cap) {
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("t must be finite and >= 0");
  }
  const MaxwellModel model{f0, kernel, kernel.kappa()};
  t_arena.clear();
  const auto outcome = detail::run_recursive<Vec3>(t, model, stream, cap, t_arena);
  SampleRecord rec;
  rec.seed = stream.key();
  rec.t = t;
  rec.m = 1.0;
  rec.v = outcome.state;
  rec.n = outcome.n;
  rec.tree = t_arena.code(outcome.tree);
  return rec;
}

BatchResult batch_velocity_sample(double t, uint64_t n_rep, const VelocityLaw& f0,
                                  const AngularKernel& kernel, uint64_t base_seed,
                                  uint64_t cap, int threads) {
  if (n_rep < 1) throw std::invalid_argument("n_rep must be >= 1");
  return batch_generic(n_rep, base_seed, threads,
                       [&](RngStream stream, uint64_t) -> std::optional<SampleRecord> {
                         try {
                           return velocity_sample(t, f0, kernel, stream, cap);
                         } catch (const CapExceededError&) {
                           return std::nullopt;
                         }
                       });
}

double wild_weight(uint64_t n, double t, double kappa) {
  if (n < 1) throw std::invalid_argument("wild_weight needs n >= 1");
  const double p = std::exp(-kappa * t);
  if (n == 1) return p;
  return p * std::pow(1.0 - p, static_cast<double>(n - 1));
}

double tree_weight(const OrderedTree& tree, double t, double kappa) {
  return wild_weight(static_cast<uint64_t>(tree.leaf_count()), t, kappa);
}

namespace {

struct QnValue {
  Vec3 v;
  int32_t tree;
};

// Post-order evaluation of the Q_n recursion on an explicit stack.
QnValue eval_qn(uint64_t n, const VelocityLaw& f0, const AngularKernel& kernel,
                RngStream& rng, detail::TreeArena& arena) {
  struct Frame {
    uint64_t n;
    int stage = 0;  // 0: not yet expanded, 1: children evaluated
  };
  std::vector<Frame> stack;
  std::vector<QnValue> results;
  stack.push_back(Frame{n});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.n == 1) {
      results.push_back(QnValue{f0.sample(rng), detail::TreeArena::kLeaf});
      stack.pop_back();
      continue;
    }
    if (f.stage == 0) {
      const uint64_t k = 1 + rng.next_index(f.n - 1);
      f.stage = 1;
      const uint64_t rest = f.n - k;
      stack.push_back(Frame{rest, 0});  // evaluated second
      stack.push_back(Frame{k, 0});     // evaluated first
      continue;
    }
    // Children are on the results stack: right on top of left.
    const QnValue right = results.back();
    results.pop_back();
    const QnValue left = results.back();
    results.pop_back();
    const Vec3 sigma = sample_sigma(left.v, right.v, kernel, rng);
    results.push_back(QnValue{post_collision(left.v, right.v, sigma).first,
                              arena.add(left.tree, right.tree)});
    stack.pop_back();
  }
  return results.back();
}

}  // namespace

Vec3 sample_from_qn(uint64_t n, const VelocityLaw& f0, const AngularKernel& kernel,
                    RngStream& rng, uint64_t cap) {
  if (n < 1) throw std::invalid_argument("sample_from_qn needs n >= 1");
  if (n > cap) throw CapExceededError("Q_n order exceeds cap");
  t_arena.clear();
  return eval_qn(n, f0, kernel, rng, t_arena).v;
}

uint64_t sample_wild_order(double t, double kappa, RngStream& rng) {
  const double p = std::exp(-kappa * t);
  if (p >= 1.0) return 1;
  const double u = rng.next_double();
  // Smallest n with 1 - (1-p)^n >= u.
  const double ratio = std::log1p(-u) / std::log1p(-p);
  const double n = std::ceil(ratio);
  return n < 1.0 ? 1 : static_cast<uint64_t>(n);
}

SampleRecord sample_wild_mixture(double t, const VelocityLaw& f0,
                                 const AngularKernel& kernel, RngStream stream,
                                 uint64_t cap) {
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  const uint64_t n = sample_wild_order(t, kernel.kappa(), stream);
  if (n > cap) throw CapExceededError("Q_n order exceeds cap");
  t_arena.clear();
  const QnValue value = eval_qn(n, f0, kernel, stream, t_arena);
  SampleRecord rec;
  rec.seed = stream.key();
  rec.t = t;
  rec.m = 1.0;
  rec.v = value.v;
  rec.n = n - 1;
  rec.tree = t_arena.code(value.tree);
  return rec;
}

BatchResult batch_wild_mixture(double t, uint64_t n_rep, const VelocityLaw& f0,
                               const AngularKernel& kernel, uint64_t base_seed,
                               uint64_t cap, int threads) {
  if (n_rep < 1) throw std::invalid_argument("n_rep must be >= 1");
  return batch_generic(n_rep, base_seed, threads,
                       [&](RngStream stream, uint64_t) -> std::optional<SampleRecord> {
                         try {
                           return sample_wild_mixture(t, f0, kernel, stream, cap);
                         } catch (const CapExceededError&) {
                           return std::nullopt;
                         }
                       });
}

}  // namespace wildsim
