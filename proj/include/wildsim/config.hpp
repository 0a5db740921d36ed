#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wildsim/dsmc.hpp"
#include "wildsim/initial_law.hpp"
#include "wildsim/series.hpp"

namespace wildsim {

// Flat key = value run configuration. Unknown keys are rejected so typos
// fail loudly; '#' starts a comment.
struct RunConfig {
  double gamma = 1.0;
  std::optional<double> e0;  // nullopt = auto (energy of f0)
  std::string kernel = "constant(0.07957747154594767)";  // b = 1/(4 pi)
  std::string f0 = "gaussian(0,0,0,0.3333333333333333)";
  double m0 = 1.0;
  std::vector<double> t_grid = {0.125};
  uint64_t n_rep = 10000;
  uint64_t base_seed = 1;
  uint64_t cap = 1000000;
  int threads = 0;  // 0 = hardware

  int series_k = 7;
  size_t series_particles = 2048;
  size_t series_time_strata = 32;
  int series_reps = 8;
  size_t series_resample = 0;  // 0 = keep weights exactly

  size_t dsmc_n = 100000;
  double dsmc_dt = 0.0;  // <= 0 = auto

  int mom_blocks = 32;
  double ks_alpha = 1e-3;
  double w1_threshold = 0.02;
  int n_proj = 16;

  std::string out_dir = "out";
  std::string records_path;  // input of `compare`
  std::string oracle_path;   // input of `compare`
};

RunConfig parse_config_file(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& line);

// Canonical serialization: every key, fixed order, round-trip number
// formatting. Basis of the manifest hash.
std::string canonical_config(const RunConfig& cfg);
uint64_t config_hash(const RunConfig& cfg);

// "constant(v)" | "power(exponent, floor)" | "table(path)".
AngularKernel parse_kernel(const std::string& spec);

// "gaussian(mx,my,mz,variance)" | "point(x,y,z)" |
// "twopoint(x1,y1,z1,x2,y2,z2,p)" | "ball(radius)" | "shell(radius)".
VelocityLaw parse_velocity_law(const std::string& spec);

struct ResolvedModel {
  ModelParams params;
  InitialLaw f0;
  bool e0_is_linked = true;  // e0 equals the weighted energy of f0
};

// Builds the model, resolving e0 = auto to the weighted energy of f0. When
// a manual e0 (or m0 != 1) breaks the link between the weighted equation
// and the physical one, e0_is_linked is false and callers print a warning:
// the equation stays well-posed but the m-moment no longer tracks the
// Boltzmann solution.
ResolvedModel resolve_model(const RunConfig& cfg);

}  // namespace wildsim
