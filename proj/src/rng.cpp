#include "wildsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace wildsim {

namespace {

// Philox 4x32-10 (Salmon et al., "Parallel random numbers: as easy as
// 1, 2, 3"). One invocation maps a 128-bit counter and 64-bit key to 128
// output bits.
struct Block {
  uint32_t w[4];
};

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline Block philox(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3,
                    uint32_t k0, uint32_t k1) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    const uint64_t p0 = static_cast<uint64_t>(kMul0) * c0;
    const uint64_t p1 = static_cast<uint64_t>(kMul1) * c2;
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
    const uint32_t lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
    const uint32_t lo1 = static_cast<uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
  }
  return Block{{c0, c1, c2, c3}};
}

// Counter word 2 separates usage domains so that draw counters, split
// indices and seed hashing can never collide.
enum Domain : uint32_t { kDomainDraw = 0, kDomainSplit = 1, kDomainSeed = 2 };

inline Block call(uint64_t key, uint64_t ctr, uint32_t domain) {
  return philox(static_cast<uint32_t>(ctr), static_cast<uint32_t>(ctr >> 32),
                domain, 0u, static_cast<uint32_t>(key),
                static_cast<uint32_t>(key >> 32));
}

inline uint64_t join(uint32_t lo, uint32_t hi) {
  return static_cast<uint64_t>(lo) | (static_cast<uint64_t>(hi) << 32);
}

}  // namespace

RngStream RngStream::root(uint64_t seed) {
  // Hash the seed through the seed domain with a fixed key so that small
  // consecutive seeds land on unrelated stream keys.
  const Block b = philox(static_cast<uint32_t>(seed),
                         static_cast<uint32_t>(seed >> 32), kDomainSeed, 0u,
                         0x243F6A88u, 0x85A308D3u);
  RngStream s;
  s.key_ = join(b.w[0], b.w[1]);
  return s;
}

RngStream RngStream::from_key(uint64_t key) {
  RngStream s;
  s.key_ = key;
  return s;
}

RngStream RngStream::split(uint64_t index) const {
  const Block b = call(key_, index, kDomainSplit);
  RngStream child;
  child.key_ = join(b.w[0], b.w[1]);
  return child;
}

uint64_t RngStream::next_u64() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const Block b = call(key_, ctr_++, kDomainDraw);
  cached_ = join(b.w[2], b.w[3]);
  has_cached_ = true;
  return join(b.w[0], b.w[1]);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_double_open() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

uint64_t RngStream::next_index(uint64_t n) {
  return static_cast<uint64_t>(
      (static_cast<__uint128_t>(next_u64()) * n) >> 64);
}

double RngStream::next_exponential(double rate) {
  return -std::log(next_double_open()) / rate;
}

double RngStream::next_normal() {
  const double u1 = next_double_open();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 RngStream::next_normal3() {
  const double u1 = next_double_open();
  const double u2 = next_double();
  const double u3 = next_double_open();
  const double u4 = next_double();
  const double r1 = std::sqrt(-2.0 * std::log(u1));
  const double r2 = std::sqrt(-2.0 * std::log(u3));
  const double a1 = 2.0 * std::numbers::pi * u2;
  const double a2 = 2.0 * std::numbers::pi * u4;
  return {r1 * std::cos(a1), r1 * std::sin(a1), r2 * std::cos(a2)};
}

Vec3 RngStream::next_unit_vector() {
  const double z = 2.0 * next_double() - 1.0;
  const double phi = 2.0 * std::numbers::pi * next_double();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

uint64_t RngStream::next_poisson(double mean) {
  const double limit = std::exp(-mean);
  uint64_t k = 0;
  double prod = next_double_open();
  while (prod > limit) {
    ++k;
    prod *= next_double_open();
  }
  return k;
}

}  // namespace wildsim
