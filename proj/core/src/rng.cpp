#include "speckledip/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speckledip {
namespace philox {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline Block round_once(const Block& c, std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c.x[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c.x[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  return {{hi1 ^ c.x[1] ^ k0, lo1, hi0 ^ c.x[3] ^ k1, lo0}};
}

}  // namespace

Block philox4x32_10(Block counter, std::uint32_t key0, std::uint32_t key1) {
  for (int r = 0; r < 10; ++r) {
    counter = round_once(counter, key0, key1);
    key0 += kWeyl0;
    key1 += kWeyl1;
  }
  return counter;
}

}  // namespace philox

Substream::Substream(std::uint64_t seed, std::uint64_t index,
                     std::uint32_t lane)
    : key0_(static_cast<std::uint32_t>(seed)),
      key1_(static_cast<std::uint32_t>(seed >> 32)),
      prefix_{static_cast<std::uint32_t>(index),
              static_cast<std::uint32_t>(index >> 32), lane} {}

void Substream::refill() {
  const philox::Block out = philox::philox4x32_10(
      {{prefix_[0], prefix_[1], prefix_[2], block_}}, key0_, key1_);
  ++block_;
  buffer_[0] =
      (static_cast<std::uint64_t>(out.x[1]) << 32) | out.x[0];
  buffer_[1] =
      (static_cast<std::uint64_t>(out.x[3]) << 32) | out.x[2];
  buffered_ = 2;
}

std::uint64_t Substream::next_bits() {
  if (buffered_ == 0) refill();
  return buffer_[2 - buffered_--];
}

double Substream::uniform() {
  // (0, 1]: 53-bit mantissa shifted up by one so log(uniform()) is finite.
  return (static_cast<double>(next_bits() >> 11) + 1.0) * 0x1.0p-53;
}

double Substream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

std::uint32_t sample_poisson(Substream& stream, double mean) {
  if (!(mean >= 0.0))
    throw std::invalid_argument("sample_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  std::uint32_t total = 0;
  // Knuth's method underflows for large means; a Poisson of mean m is the
  // sum of independent Poissons, so draw in chunks of mean <= 30.
  constexpr double kChunk = 30.0;
  while (mean > 0.0) {
    const double m = std::min(mean, kChunk);
    mean -= m;
    const double limit = std::exp(-m);
    std::uint32_t k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= stream.uniform();
    } while (product > limit);
    total += k - 1;
  }
  return total;
}

}  // namespace speckledip
