#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace reig {

/// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit counter
/// and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream keyed by (master_seed, stream_index).
///
/// The n-th 64-bit output is a pure function of (master_seed, stream_index, n),
/// so a stream replays identically no matter which thread consumes it. Child
/// streams are derived with substream(); outer loops hand each work item its
/// own child so results do not depend on the number of workers.
///
/// Satisfies std::uniform_random_bit_generator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Deterministic child stream. Distinct indices give distinct stream keys;
  /// the child starts at draw 0 regardless of how far this stream has advanced.
  RandomStream substream(std::uint64_t index) const;

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal variate (Box-Muller on two uniforms; the second value is cached).
  double normal();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t counter_ = 0;
  std::uint64_t buffer_ = 0;
  bool buffered_ = false;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

inline RandomStream substream(const RandomStream& s, std::uint64_t index) { return s.substream(index); }

/// n i.i.d. standard normal draws from s.
std::vector<double> standard_normal_draws(RandomStream& s, std::size_t n);

}  // namespace reig
