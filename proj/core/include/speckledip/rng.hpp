#pragma once

#include <array>
#include <cstdint>

namespace speckledip {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each
/// 128-bit counter maps to 128 random bits under a 64-bit key with no
/// sequential state, so any pulse of a Monte Carlo run can be generated
/// independently and in any order with bit-identical results.
namespace philox {

struct Block {
  std::array<std::uint32_t, 4> x;
};

Block philox4x32_10(Block counter, std::uint32_t key0, std::uint32_t key1);

}  // namespace philox

/// One deterministic lane of randomness, addressed by
/// (seed, stream index, lane). The counter words are
/// (index_lo, index_hi, lane, block), the key is the seed, and each
/// block yields two 64-bit words consumed as uniforms or normal pairs.
///
/// Lanes of the same (seed, index) are independent streams; the Monte
/// Carlo gives each pulse its own index and each consumer (speckle arm,
/// detector) its own lane, so pulses can be partitioned across workers
/// arbitrarily.
class Substream {
 public:
  Substream(std::uint64_t seed, std::uint64_t index, std::uint32_t lane);

  /// Uniform double in (0, 1], 53-bit resolution. Never returns 0.
  double uniform();

  /// Standard normal via Box-Muller; pairs are cached, so consecutive
  /// calls consume one uniform each on average.
  double normal();

  std::uint64_t next_bits();

 private:
  void refill();

  std::uint32_t key0_, key1_;
  std::array<std::uint32_t, 3> prefix_;  // index_lo, index_hi, lane
  std::uint32_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Poisson variate by Knuth's product-of-uniforms method, split into
/// chunks of mean <= 30 so exp(-mean) never underflows. Exact for any
/// finite mean >= 0.
std::uint32_t sample_poisson(Substream& stream, double mean);

/// Lane assignment within one pulse.
inline constexpr std::uint32_t kLaneSpecklePlus = 0;
inline constexpr std::uint32_t kLaneSpeckleMinus = 1;
inline constexpr std::uint32_t kLaneDetector1 = 2;
inline constexpr std::uint32_t kLaneDetector2 = 3;

/// Per-pulse random context: hands out the fixed lanes of
/// (seed, pulse_index).
class PulseRng {
 public:
  PulseRng(std::uint64_t seed, std::uint64_t pulse_index)
      : seed_(seed), pulse_index_(pulse_index) {}

  Substream lane(std::uint32_t which) const {
    return Substream(seed_, pulse_index_, which);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t pulse_index() const { return pulse_index_; }

 private:
  std::uint64_t seed_;
  std::uint64_t pulse_index_;
};

}  // namespace speckledip
