#include "wildsim/records_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wildsim {

namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read: " + path);
  return in;
}

}  // namespace

void write_records_jsonl(const std::string& path,
                         const std::vector<SampleRecord>& records) {
  auto out = open_out(path);
  for (const SampleRecord& r : records) {
    nlohmann::json j;
    j["seed"] = r.seed;
    j["t"] = r.t;
    j["m"] = r.m;
    j["v"] = {r.v.x, r.v.y, r.v.z};
    j["n"] = r.n;
    j["tree"] = r.tree;
    out << j.dump() << '\n';
  }
}

std::vector<SampleRecord> read_records_jsonl(const std::string& path) {
  auto in = open_in(path);
  std::vector<SampleRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    SampleRecord r;
    r.seed = j.at("seed").get<uint64_t>();
    r.t = j.at("t").get<double>();
    r.m = j.at("m").get<double>();
    const auto& v = j.at("v");
    r.v = Vec3{v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
    r.n = j.at("n").get<uint64_t>();
    r.tree = j.at("tree").get<std::string>();
    records.push_back(std::move(r));
  }
  return records;
}

void write_velocities_csv(const std::string& path, const std::vector<Vec3>& v) {
  auto out = open_out(path);
  out << "vx,vy,vz\n";
  for (const Vec3& vi : v) {
    out << fmt(vi.x) << ',' << fmt(vi.y) << ',' << fmt(vi.z) << '\n';
  }
}

std::vector<Vec3> read_velocities_csv(const std::string& path) {
  auto in = open_in(path);
  std::vector<Vec3> v;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Vec3 vi;
    double* comps[3] = {&vi.x, &vi.y, &vi.z};
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(ss, cell, ',')) {
        throw std::runtime_error("bad csv row: " + line);
      }
      *comps[k] = std::stod(cell);
    }
    v.push_back(vi);
  }
  return v;
}

void write_tree_table_csv(const std::string& path,
                          const std::vector<TreeMass>& masses) {
  auto out = open_out(path);
  out << "tree_code,leaves,mass,stderr\n";
  for (const TreeMass& tm : masses) {
    out << tm.tree.code() << ',' << tm.tree.leaf_count() << ','
        << fmt(tm.mass) << ',' << fmt(tm.std_error) << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wildsim
