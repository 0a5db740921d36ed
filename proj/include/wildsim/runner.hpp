#pragma once

#include <string>

#include "wildsim/config.hpp"

namespace wildsim {

// Artifact-producing drivers behind the CLI subcommands. Every driver
// writes into cfg.out_dir: its data files, a manifest (config hash, seed,
// schema/tool versions) and a summary. Wall-clock timing goes to a separate
// timing.json so that everything else is bit-identical across reruns of the
// same config.

void cmd_sample(const RunConfig& cfg);   // perfect sampler records + moments
void cmd_maxwell(const RunConfig& cfg);  // gamma = 0 constant-rate sampler
void cmd_wild(const RunConfig& cfg);     // Wild mixture sampler
void cmd_series(const RunConfig& cfg);   // truncated tree series + mass table
void cmd_dsmc(const RunConfig& cfg);     // oracle particle cloud
void cmd_compare(const RunConfig& cfg);  // records vs oracle report
int cmd_check(const RunConfig& cfg);     // acceptance suite; returns #failed

// Runs all artifact commands (sample, maxwell, wild, series, dsmc, compare)
// into cfg.out_dir. The deterministic-artifact set of this pipeline is what
// the determinism acceptance criterion byte-compares.
void run_pipeline(const RunConfig& cfg);

// Dispatch by subcommand name; returns the process exit code.
int run_experiment(const std::string& subcommand, const RunConfig& cfg);

}  // namespace wildsim
