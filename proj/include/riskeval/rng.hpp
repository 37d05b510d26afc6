#pragma once

#include <cmath>
#include <cstdint>

namespace riskeval {

// Counter-based generator: a SplitMix64-style finalizer applied to a keyed
// affine counter sequence. Any (seed, stream, counter) triple maps to the
// same 64-bit word on every platform, which is what makes bootstrap
// replicates and simulation blocks independent of thread count: replicate k
// always reads stream f(k) from counter 0.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix(mix(seed + kGamma) ^ mix(stream ^ kStreamSalt))) {}

  // Stateless access: the value of this stream at an absolute counter.
  std::uint64_t word(std::uint64_t counter) const noexcept {
    return mix(key_ + (counter + 1) * kGamma);
  }

  std::uint64_t next_u64() noexcept { return word(counter_++); }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller. Consumes two words per call and keeps no
  // cached spare, so the draw at a given counter offset never depends on
  // call history.
  double next_normal() noexcept {
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = next_double();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  // Unbiased integer on [0, n) by rejection on the top bits.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    if (n <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> countl_zero(n - 1);
    for (;;) {
      std::uint64_t v = next_u64() & mask;
      if (v < n) return v;
    }
  }

  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStreamSalt = 0x6A09E667F3BCC909ull;

  static int countl_zero(std::uint64_t x) noexcept {
    if (x == 0) return 64;
    int n = 0;
    while (!(x & 0x8000000000000000ull)) {
      x <<= 1;
      ++n;
    }
    return n;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace riskeval
