#pragma once

#include <string>
#include <vector>

#include "wildsim/sampler.hpp"
#include "wildsim/series.hpp"

namespace wildsim {

inline constexpr int kRecordSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// JSON-lines records: {"seed":..,"t":..,"m":..,"v":[x,y,z],"n":..,"tree":".."}
// per line. Number formatting is shortest round-trip, so files are
// bit-stable across reruns.
void write_records_jsonl(const std::string& path,
                         const std::vector<SampleRecord>& records);
std::vector<SampleRecord> read_records_jsonl(const std::string& path);

// Oracle cloud CSV: header vx,vy,vz.
void write_velocities_csv(const std::string& path, const std::vector<Vec3>& v);
std::vector<Vec3> read_velocities_csv(const std::string& path);

// Per-tree mass table CSV: header tree_code,leaves,mass,stderr.
void write_tree_table_csv(const std::string& path,
                          const std::vector<TreeMass>& masses);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace wildsim
