#include "wildsim/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>

#include <json.hpp>

#include "wildsim/checks.hpp"
#include "wildsim/dsmc.hpp"
#include "wildsim/maxwell.hpp"
#include "wildsim/records_io.hpp"
#include "wildsim/stats.hpp"

namespace wildsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

void write_manifest(const RunConfig& cfg, const std::string& subcommand) {
  json j;
  j["subcommand"] = subcommand;
  j["config_hash"] = config_hash(cfg);
  j["base_seed"] = cfg.base_seed;
  j["record_schema_version"] = kRecordSchemaVersion;
  j["report_schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["config"] = canonical_config(cfg);
  write_text_file(out_path(cfg, "manifest.json"), j.dump(2) + "\n");
}

void write_timing(const RunConfig& cfg, double seconds) {
  json j;
  j["wall_seconds"] = seconds;
  write_text_file(out_path(cfg, "timing.json"), j.dump(2) + "\n");
}

json moment_json(const MomentReport& r) {
  json j;
  j["name"] = r.name;
  j["plain_mean"] = r.plain_mean;
  j["blocks"] = r.blocks;
  j["median_of_means"] = r.median_of_means;
  j["ci_half_width"] = r.ci_half_width;
  if (std::isfinite(r.tail_exponent)) {
    j["tail_exponent"] = r.tail_exponent;
  } else {
    j["tail_exponent"] = nullptr;
  }
  return j;
}

void warn_unlinked(const ResolvedModel& model) {
  if (!model.e0_is_linked) {
    std::cerr << "WARNING: e0 differs from the energy of f0 (or m0 != 1); the "
                 "weighted equation is still well-posed but E[M_t 1{V_t in .}] "
                 "no longer tracks the Boltzmann solution.\n";
  }
}

// Shared shape of the three record-producing commands.
void run_record_command(const RunConfig& cfg, const std::string& name,
                        const std::function<BatchResult(double)>& batch) {
  const auto start = Clock::now();
  json summary;
  summary["subcommand"] = name;
  summary["t_grid"] = cfg.t_grid;
  json per_t = json::array();
  for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
    const double t = cfg.t_grid[i];
    const BatchResult batch_result = batch(t);
    const std::string file = "records_" + std::to_string(i) + ".jsonl";
    write_records_jsonl(out_path(cfg, file), batch_result.records);
    json entry;
    entry["t"] = t;
    entry["file"] = file;
    entry["records"] = batch_result.records.size();
    entry["failures"] = batch_result.failures;
    if (batch_result.records.size() >=
        static_cast<size_t>(cfg.mom_blocks) * 8) {
      entry["moments"] = {
          moment_json(estimate_weighted_moment(batch_result.records, 0.0,
                                               cfg.mom_blocks)),
          moment_json(estimate_weighted_moment(batch_result.records, 2.0,
                                               cfg.mom_blocks))};
    }
    per_t.push_back(entry);
  }
  summary["runs"] = per_t;
  write_text_file(out_path(cfg, "summary.json"), summary.dump(2) + "\n");
  write_manifest(cfg, name);
  write_timing(cfg, std::chrono::duration<double>(Clock::now() - start).count());
}

}  // namespace

void cmd_sample(const RunConfig& cfg) {
  const ResolvedModel model = resolve_model(cfg);
  warn_unlinked(model);
  run_record_command(cfg, "sample", [&](double t) {
    return batch_sample(t, cfg.n_rep, model.f0, model.params, cfg.base_seed,
                        cfg.cap, cfg.threads);
  });
}

void cmd_maxwell(const RunConfig& cfg) {
  const ResolvedModel model = resolve_model(cfg);
  run_record_command(cfg, "maxwell", [&](double t) {
    return batch_velocity_sample(t, cfg.n_rep, model.f0.velocity,
                                 model.params.kernel, cfg.base_seed, cfg.cap,
                                 cfg.threads);
  });
}

void cmd_wild(const RunConfig& cfg) {
  const ResolvedModel model = resolve_model(cfg);
  run_record_command(cfg, "wild", [&](double t) {
    return batch_wild_mixture(t, cfg.n_rep, model.f0.velocity,
                              model.params.kernel, cfg.base_seed, cfg.cap,
                              cfg.threads);
  });
}

void cmd_series(const RunConfig& cfg) {
  const auto start = Clock::now();
  const ResolvedModel model = resolve_model(cfg);
  warn_unlinked(model);
  SeriesBudget budget;
  budget.n_particles = cfg.series_particles;
  budget.n_time = cfg.series_time_strata;

  json summary;
  summary["subcommand"] = "series";
  json per_t = json::array();
  for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
    const double t = cfg.t_grid[i];
    SeriesResult result =
        truncated_series(t, cfg.series_k, model.f0, model.params, budget,
                         cfg.series_reps, cfg.base_seed, cfg.threads);
    if (cfg.series_resample > 0 && result.cloud.size() > cfg.series_resample) {
      RngStream rng = RngStream::root(cfg.base_seed).split(777);
      result.cloud = systematic_resample(result.cloud, cfg.series_resample, rng);
    }
    const std::string file = "tree_table_" + std::to_string(i) + ".csv";
    write_tree_table_csv(out_path(cfg, file), result.masses);
    double mass = 0.0, se2 = 0.0;
    for (const TreeMass& tm : result.masses) {
      mass += tm.mass;
      se2 += tm.std_error * tm.std_error;
    }
    json entry;
    entry["t"] = t;
    entry["file"] = file;
    entry["k"] = cfg.series_k;
    entry["total_mass"] = mass;
    entry["total_mass_se"] = std::sqrt(se2);
    entry["cloud_particles"] = result.cloud.size();
    per_t.push_back(entry);
  }
  summary["runs"] = per_t;
  write_text_file(out_path(cfg, "series_summary.json"), summary.dump(2) + "\n");
  write_manifest(cfg, "series");
  write_timing(cfg, std::chrono::duration<double>(Clock::now() - start).count());
}

void cmd_dsmc(const RunConfig& cfg) {
  const auto start = Clock::now();
  const ResolvedModel model = resolve_model(cfg);
  json summary;
  summary["subcommand"] = "dsmc";
  json per_t = json::array();
  for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
    const double t = cfg.t_grid[i];
    const DsmcResult result =
        run_dsmc(cfg.dsmc_n, t, cfg.dsmc_dt, model.f0.velocity, model.params,
                 RngStream::root(cfg.base_seed).split(900 + i));
    const std::string file = "oracle_" + std::to_string(i) + ".csv";
    write_velocities_csv(out_path(cfg, file), result.velocities);
    json entry;
    entry["t"] = t;
    entry["file"] = file;
    entry["steps"] = result.steps;
    entry["dt_used"] = result.dt_used;
    entry["candidates"] = result.candidates;
    entry["accepted"] = result.accepted;
    per_t.push_back(entry);
  }
  summary["runs"] = per_t;
  write_text_file(out_path(cfg, "dsmc_summary.json"), summary.dump(2) + "\n");
  write_manifest(cfg, "dsmc");
  write_timing(cfg, std::chrono::duration<double>(Clock::now() - start).count());
}

void cmd_compare(const RunConfig& cfg) {
  const auto start = Clock::now();
  if (cfg.records_path.empty() || cfg.oracle_path.empty()) {
    throw std::invalid_argument("compare needs records = <path> and oracle = <path>");
  }
  const std::vector<SampleRecord> records = read_records_jsonl(cfg.records_path);
  const std::vector<Vec3> oracle = read_velocities_csv(cfg.oracle_path);
  CompareThresholds thresholds;
  thresholds.ks_alpha = cfg.ks_alpha;
  thresholds.w1_max = cfg.w1_threshold;
  thresholds.blocks = cfg.mom_blocks;
  const OracleReport report = weighted_vs_oracle_report(
      records, oracle, cfg.n_proj, thresholds, cfg.base_seed);

  json j;
  j["report_schema_version"] = kReportSchemaVersion;
  j["radial_ks"] = {{"statistic", report.radial_ks.statistic},
                    {"p_value", report.radial_ks.p_value},
                    {"n_effective", report.radial_ks.n_effective},
                    {"pass", report.ks_pass}};
  json moments = json::array();
  for (const MomentComparison& m : report.moments) {
    moments.push_back({{"name", m.name},
                       {"weighted_value", m.weighted_value},
                       {"weighted_se", m.weighted_se},
                       {"oracle_value", m.oracle_value},
                       {"oracle_se", m.oracle_se},
                       {"n_sigma", m.n_sigma},
                       {"pass", m.pass}});
  }
  j["moments"] = moments;
  j["sliced_w1"] = {{"value", report.sliced_w1_value},
                    {"threshold", cfg.w1_threshold},
                    {"pass", report.w1_pass}};
  j["pass"] = report.pass;
  write_text_file(out_path(cfg, "compare_report.json"), j.dump(2) + "\n");
  write_manifest(cfg, "compare");
  write_timing(cfg, std::chrono::duration<double>(Clock::now() - start).count());
  if (!report.pass) {
    std::cerr << "compare: agreement thresholds not met (see compare_report.json)\n";
  }
}

void run_pipeline(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  RunConfig sub = cfg;
  sub.out_dir = (fs::path(cfg.out_dir) / "sample").string();
  cmd_sample(sub);
  const std::string records = (fs::path(sub.out_dir) / "records_0.jsonl").string();
  sub.out_dir = (fs::path(cfg.out_dir) / "maxwell").string();
  cmd_maxwell(sub);
  sub.out_dir = (fs::path(cfg.out_dir) / "wild").string();
  cmd_wild(sub);
  sub.out_dir = (fs::path(cfg.out_dir) / "series").string();
  cmd_series(sub);
  sub.out_dir = (fs::path(cfg.out_dir) / "dsmc").string();
  cmd_dsmc(sub);
  const std::string oracle = (fs::path(sub.out_dir) / "oracle_0.csv").string();
  sub.out_dir = (fs::path(cfg.out_dir) / "compare").string();
  sub.records_path = records;
  sub.oracle_path = oracle;
  cmd_compare(sub);
}

int cmd_check(const RunConfig& cfg) {
  return run_acceptance_cli(cfg);
}

int run_experiment(const std::string& subcommand, const RunConfig& cfg) {
  if (subcommand == "sample") {
    cmd_sample(cfg);
  } else if (subcommand == "maxwell") {
    cmd_maxwell(cfg);
  } else if (subcommand == "wild") {
    cmd_wild(cfg);
  } else if (subcommand == "series") {
    cmd_series(cfg);
  } else if (subcommand == "dsmc") {
    cmd_dsmc(cfg);
  } else if (subcommand == "compare") {
    cmd_compare(cfg);
  } else if (subcommand == "check") {
    return cmd_check(cfg);
  } else {
    throw std::invalid_argument("unknown subcommand: " + subcommand);
  }
  return 0;
}

}  // namespace wildsim
