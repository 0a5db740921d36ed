#include "wildsim/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "wildsim/errors.hpp"
#include "wildsim/parallel.hpp"

namespace wildsim {

namespace {

// Cumulative weights for biased picking; returns the (Kahan-summed) total.
double build_cumulative(const ParticleCloud& cloud,
                        const std::function<double(const Particle&)>& weight,
                        std::vector<double>& cum) {
  cum.resize(cloud.size());
  double sum = 0.0, comp = 0.0;
  for (size_t i = 0; i < cloud.size(); ++i) {
    const double y = weight(cloud.particles[i]) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    cum[i] = sum;
  }
  return sum;
}

size_t pick(const std::vector<double>& cum, double total, RngStream& rng) {
  const double target = rng.next_double() * total;
  const auto it = std::upper_bound(cum.begin(), cum.end(), target);
  size_t i = static_cast<size_t>(it - cum.begin());
  if (i >= cum.size()) i = cum.size() - 1;
  return i;
}

}  // namespace

ParticleCloud q_operator(const ParticleCloud& f, const ParticleCloud& g,
                         const ModelParams& params, size_t n_out, RngStream& rng) {
  if (f.empty() || g.empty()) {
    throw EmptyCloudError("q_operator needs nonempty clouds");
  }
  if (n_out < 1) throw std::invalid_argument("q_operator needs n_out >= 1");

  std::vector<double> cum_f, cum_g;
  const double f_rate_mass = build_cumulative(
      f, [&](const Particle& p) { return p.w * lambda_rate(p.y.v, params); },
      cum_f);
  const double g_mass = build_cumulative(
      g, [](const Particle& p) { return p.w; }, cum_g);

  // Exact bilinear mass identity: Q(F,G)(E) = kappa G(E) int Lambda dF.
  const double total = params.kernel.kappa() * g_mass * f_rate_mass;
  ParticleCloud out;
  if (total <= 0.0) return out;

  out.particles.reserve(n_out);
  const double w_each = total / static_cast<double>(n_out);
  for (size_t k = 0; k < n_out; ++k) {
    const Particle& py = f.particles[pick(cum_f, f_rate_mass, rng)];
    const Particle& pstar = g.particles[pick(cum_g, g_mass, rng)];
    const CollisionAux z =
        sample_collision_aux(py.y.v, pstar.y.v, params.kernel, rng);
    out.particles.push_back(
        Particle{w_each, 0.0, collision_map(py.y, pstar.y, z, params)});
  }
  return out;
}

ParticleCloud gamma_damp(const ParticleCloud& j, double t, const ModelParams& params) {
  if (!(t >= 0.0)) throw std::invalid_argument("gamma_damp needs t >= 0");
  const double kappa = params.kernel.kappa();
  ParticleCloud out;
  out.particles.reserve(j.size());
  for (const Particle& p : j.particles) {
    if (p.s > t) continue;
    Particle q = p;
    q.w = p.w * std::exp(-kappa * lambda_rate(p.y.v, params) * (t - p.s));
    q.s = 0.0;
    out.particles.push_back(q);
  }
  return out;
}

size_t SeriesBudget::particles_at(int depth) const {
  const size_t scaled = n_particles >> depth;
  return std::max(particle_floor, scaled);
}

size_t SeriesBudget::strata_at(int depth) const {
  const size_t scaled = n_time >> (2 * depth);
  return std::max(time_floor, scaled);
}

namespace {

ParticleCloud j_measure_impl(const OrderedTree& tree, double t, const InitialLaw& f0,
                             const ModelParams& params, const SeriesBudget& budget,
                             RngStream& rng, int depth) {
  const size_t np = budget.particles_at(depth);
  if (tree.is_leaf()) {
    ParticleCloud cloud;
    cloud.particles.reserve(np);
    const double w = 1.0 / static_cast<double>(np);
    for (size_t i = 0; i < np; ++i) {
      cloud.particles.push_back(Particle{w, 0.0, f0.sample(rng)});
    }
    return cloud;
  }

  const auto [left, right] = tree.children();
  const size_t nt = budget.strata_at(depth);
  const double dt = t / static_cast<double>(nt);
  ParticleCloud out;
  for (size_t r = 0; r < nt; ++r) {
    const double s_r = (static_cast<double>(r) + 0.5) * dt;
    const ParticleCloud l_damped = gamma_damp(
        j_measure_impl(left, s_r, f0, params, budget, rng, depth + 1), s_r,
        params);
    const ParticleCloud r_damped = gamma_damp(
        j_measure_impl(right, s_r, f0, params, budget, rng, depth + 1), s_r,
        params);
    if (l_damped.empty() || r_damped.empty()) continue;
    ParticleCloud stratum = q_operator(l_damped, r_damped, params, np, rng);
    for (Particle& p : stratum.particles) {
      p.w *= dt;   // length of the stratum in the ds integral
      p.s = s_r;
      out.particles.push_back(p);
    }
  }
  return out;
}

}  // namespace

ParticleCloud j_measure(const OrderedTree& tree, double t, const InitialLaw& f0,
                        const ModelParams& params, const SeriesBudget& budget,
                        RngStream& rng) {
  if (budget.n_particles < 1 || budget.n_time < 1) {
    throw std::invalid_argument("series budget counts must be >= 1");
  }
  return j_measure_impl(tree, t, f0, params, budget, rng, 0);
}

SeriesResult truncated_series(double t, int k, const InitialLaw& f0,
                              const ModelParams& params, const SeriesBudget& budget,
                              int reps, uint64_t seed, int threads) {
  if (k < 1) throw std::invalid_argument("truncated_series needs k >= 1");
  if (reps < 1) throw std::invalid_argument("truncated_series needs reps >= 1");
  const std::vector<OrderedTree> trees = enumerate_trees(k);
  const RngStream base = RngStream::root(seed);

  struct Piece {
    ParticleCloud cloud;
    double mass = 0.0;
  };
  std::vector<Piece> pieces(trees.size() * static_cast<size_t>(reps));

  parallel_for(pieces.size(), threads, [&](uint64_t idx) {
    const size_t tree_idx = idx / static_cast<size_t>(reps);
    RngStream rng = base.split(idx);
    ParticleCloud damped = gamma_damp(
        j_measure(trees[tree_idx], t, f0, params, budget, rng), t, params);
    Piece& piece = pieces[idx];
    piece.mass = damped.total_mass();
    piece.cloud = std::move(damped);
  });

  SeriesResult result;
  result.masses.reserve(trees.size());
  const double inv_reps = 1.0 / static_cast<double>(reps);
  std::vector<double> rep_num(static_cast<size_t>(reps), 0.0);
  std::vector<double> rep_den(static_cast<size_t>(reps), 0.0);
  for (size_t ti = 0; ti < trees.size(); ++ti) {
    double mean = 0.0;
    for (int r = 0; r < reps; ++r) {
      mean += pieces[ti * reps + r].mass;
    }
    mean *= inv_reps;
    double var = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double d = pieces[ti * reps + r].mass - mean;
      var += d * d;
    }
    var = reps > 1 ? var / (reps - 1.0) : 0.0;
    TreeMass tm{trees[ti], mean, std::sqrt(var * inv_reps)};
    result.masses.push_back(tm);
    for (int r = 0; r < reps; ++r) {
      for (Particle& p : pieces[ti * reps + r].cloud.particles) {
        rep_num[static_cast<size_t>(r)] += p.w * p.y.m * norm2(p.y.v);
        rep_den[static_cast<size_t>(r)] += p.w * p.y.m;
        p.w *= inv_reps;
        result.cloud.particles.push_back(std::move(p));
      }
    }
  }
  for (int r = 0; r < reps; ++r) {
    result.rep_second_moment.push_back(
        rep_den[static_cast<size_t>(r)] > 0.0
            ? rep_num[static_cast<size_t>(r)] / rep_den[static_cast<size_t>(r)]
            : 0.0);
  }
  return result;
}

std::vector<TreeCheckRow> tree_probability_check(const SeriesResult& series,
                                                 const std::vector<SampleRecord>& records,
                                                 double n_sigma) {
  if (records.empty()) {
    throw InsufficientDataError("tree_probability_check needs records");
  }
  std::unordered_map<std::string, uint64_t> counts;
  for (const SampleRecord& rec : records) {
    ++counts[rec.tree];
  }
  const double n = static_cast<double>(records.size());
  std::vector<TreeCheckRow> rows;
  rows.reserve(series.masses.size());
  for (const TreeMass& tm : series.masses) {
    TreeCheckRow row;
    row.code = tm.tree.code();
    row.leaves = tm.tree.leaf_count();
    row.series_mass = tm.mass;
    row.series_se = tm.std_error;
    const auto it = counts.find(row.code);
    const double hits = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    row.frequency = hits / n;
    row.frequency_se = std::sqrt(row.frequency * (1.0 - row.frequency) / n);
    const double combined =
        std::sqrt(row.series_se * row.series_se + row.frequency_se * row.frequency_se);
    row.flagged = std::fabs(row.series_mass - row.frequency) > n_sigma * combined;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wildsim
