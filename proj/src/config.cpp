#include "wildsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wildsim {

namespace {

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

double to_double(const std::string& s) {
  size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

uint64_t to_u64(const std::string& s) {
  size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

std::vector<double> to_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(to_double(trim(item)));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// name(arg1, arg2, ...) -> {name, args}
std::pair<std::string, std::vector<std::string>> parse_call(const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')') {
    throw std::invalid_argument("expected name(args): " + spec);
  }
  const std::string name = trim(spec.substr(0, open));
  const std::string inner = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<std::string> args;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) args.push_back(trim(item));
  return {name, args};
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

AngularKernel parse_kernel(const std::string& spec) {
  const auto [name, args] = parse_call(spec);
  if (name == "constant" && args.size() == 1) {
    return AngularKernel::constant(to_double(args[0]));
  }
  if (name == "power" && args.size() == 2) {
    return AngularKernel::truncated_power(to_double(args[0]), to_double(args[1]));
  }
  if (name == "table" && args.size() == 1) {
    return AngularKernel::tabulated_from_file(args[0]);
  }
  throw std::invalid_argument("unknown kernel spec: " + spec);
}

VelocityLaw parse_velocity_law(const std::string& spec) {
  const auto [name, args] = parse_call(spec);
  if (name == "gaussian" && args.size() == 4) {
    return VelocityLaw::gaussian(
        Vec3{to_double(args[0]), to_double(args[1]), to_double(args[2])},
        to_double(args[3]));
  }
  if (name == "point" && args.size() == 3) {
    return VelocityLaw::point(
        Vec3{to_double(args[0]), to_double(args[1]), to_double(args[2])});
  }
  if (name == "twopoint" && args.size() == 7) {
    return VelocityLaw::two_point(
        Vec3{to_double(args[0]), to_double(args[1]), to_double(args[2])},
        Vec3{to_double(args[3]), to_double(args[4]), to_double(args[5])},
        to_double(args[6]));
  }
  if (name == "ball" && args.size() == 1) {
    return VelocityLaw::uniform_ball(to_double(args[0]));
  }
  if (name == "shell" && args.size() == 1) {
    return VelocityLaw::shell(to_double(args[0]));
  }
  throw std::invalid_argument("unknown f0 spec: " + spec);
}

void apply_config_line(RunConfig& cfg, const std::string& raw) {
  std::string line = raw;
  const auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("config line missing '=': " + raw);
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));

  if (key == "gamma") cfg.gamma = to_double(value);
  else if (key == "e0") cfg.e0 = value == "auto" ? std::nullopt : std::optional<double>(to_double(value));
  else if (key == "kernel") cfg.kernel = value;
  else if (key == "f0") cfg.f0 = value;
  else if (key == "m0") cfg.m0 = to_double(value);
  else if (key == "t") cfg.t_grid = to_doubles(value);
  else if (key == "n_rep") cfg.n_rep = to_u64(value);
  else if (key == "base_seed") cfg.base_seed = to_u64(value);
  else if (key == "cap") cfg.cap = to_u64(value);
  else if (key == "threads") cfg.threads = static_cast<int>(to_u64(value));
  else if (key == "series_k") cfg.series_k = static_cast<int>(to_u64(value));
  else if (key == "series_particles") cfg.series_particles = to_u64(value);
  else if (key == "series_time_strata") cfg.series_time_strata = to_u64(value);
  else if (key == "series_reps") cfg.series_reps = static_cast<int>(to_u64(value));
  else if (key == "series_resample") cfg.series_resample = to_u64(value);
  else if (key == "dsmc_n") cfg.dsmc_n = to_u64(value);
  else if (key == "dsmc_dt") cfg.dsmc_dt = value == "auto" ? 0.0 : to_double(value);
  else if (key == "mom_blocks") cfg.mom_blocks = static_cast<int>(to_u64(value));
  else if (key == "ks_alpha") cfg.ks_alpha = to_double(value);
  else if (key == "w1_threshold") cfg.w1_threshold = to_double(value);
  else if (key == "n_proj") cfg.n_proj = static_cast<int>(to_u64(value));
  else if (key == "out") cfg.out_dir = value;
  else if (key == "records") cfg.records_path = value;
  else if (key == "oracle") cfg.oracle_path = value;
  else throw std::invalid_argument("unknown config key: " + key);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) apply_config_line(cfg, line);
  return cfg;
}

std::string canonical_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "gamma = " << format_double(cfg.gamma) << '\n';
  out << "e0 = " << (cfg.e0 ? format_double(*cfg.e0) : std::string("auto")) << '\n';
  out << "kernel = " << cfg.kernel << '\n';
  out << "f0 = " << cfg.f0 << '\n';
  out << "m0 = " << format_double(cfg.m0) << '\n';
  out << "t = ";
  for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
    if (i) out << ',';
    out << format_double(cfg.t_grid[i]);
  }
  out << '\n';
  out << "n_rep = " << cfg.n_rep << '\n';
  out << "base_seed = " << cfg.base_seed << '\n';
  out << "cap = " << cfg.cap << '\n';
  out << "series_k = " << cfg.series_k << '\n';
  out << "series_particles = " << cfg.series_particles << '\n';
  out << "series_time_strata = " << cfg.series_time_strata << '\n';
  out << "series_reps = " << cfg.series_reps << '\n';
  out << "series_resample = " << cfg.series_resample << '\n';
  out << "dsmc_n = " << cfg.dsmc_n << '\n';
  out << "dsmc_dt = " << format_double(cfg.dsmc_dt) << '\n';
  out << "mom_blocks = " << cfg.mom_blocks << '\n';
  out << "ks_alpha = " << format_double(cfg.ks_alpha) << '\n';
  out << "w1_threshold = " << format_double(cfg.w1_threshold) << '\n';
  out << "n_proj = " << cfg.n_proj << '\n';
  return out.str();
}

uint64_t config_hash(const RunConfig& cfg) {
  // FNV-1a 64 over the canonical serialization. Note threads and out_dir
  // are deliberately excluded: they must not change any result.
  const std::string s = canonical_config(cfg);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ResolvedModel resolve_model(const RunConfig& cfg) {
  ResolvedModel model;
  model.f0.m0 = cfg.m0;
  model.f0.velocity = parse_velocity_law(cfg.f0);
  model.params.gamma = cfg.gamma;
  model.params.kernel = parse_kernel(cfg.kernel);
  const double linked_e0 = model.f0.weighted_energy();
  model.params.e0 = cfg.e0 ? *cfg.e0 : linked_e0;
  if (!(model.params.e0 > 0.0)) {
    throw std::invalid_argument("resolved e0 must be positive (f0 concentrated at v = 0?)");
  }
  model.params.validate();
  model.e0_is_linked =
      std::fabs(model.params.e0 - linked_e0) <= 1e-12 * (1.0 + linked_e0) &&
      cfg.m0 == 1.0;
  return model;
}

}  // namespace wildsim
