#include "reig/core/random.hpp"

#include <cmath>
#include <numbers>

namespace reig {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {}

RandomStream RandomStream::substream(std::uint64_t index) const {
  // Child index is a bijective mix of (parent index, child index) pairs in
  // practice; a collision would need a 64-bit splitmix coincidence.
  const std::uint64_t child = splitmix64(splitmix64(stream_index_ + 0x632BE59BD9B4E019ull) ^ index);
  return RandomStream(master_seed_, child);
}

RandomStream::result_type RandomStream::operator()() {
  if (buffered_) {
    buffered_ = false;
    return buffer_;
  }
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
      static_cast<std::uint32_t>(stream_index_), static_cast<std::uint32_t>(stream_index_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(master_seed_),
                                            static_cast<std::uint32_t>(master_seed_ >> 32)};
  const auto out = philox4x32(ctr, key);
  ++counter_;
  buffer_ = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  buffered_ = true;
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

double RandomStream::uniform() {
  // 53 random bits centred in their bin: never exactly 0 or 1.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::vector<double> standard_normal_draws(RandomStream& s, std::size_t n) {
  std::vector<double> out(n);
  for (auto& x : out) x = s.normal();
  return out;
}

}  // namespace reig
