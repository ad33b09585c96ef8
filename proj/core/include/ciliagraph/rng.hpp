#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ciliagraph {

// Deterministic splittable generator. All randomness in the library flows from a
// single 64-bit seed through instances of this class; stochastic operations take
// an explicit Rng& so runs are bit-reproducible across platforms. The stream is
// splitmix64; child streams are derived from the *base* seed and a stream key,
// so split(k) yields the same child no matter how much the parent has consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : base_(seed), state_(seed) {}

  [[nodiscard]] std::uint64_t base_seed() const noexcept { return base_; }

  std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Child stream keyed on (base seed, key). Same key -> same child.
  [[nodiscard]] Rng split(std::uint64_t key) const noexcept {
    return Rng(mix(base_ ^ mix(key + 0x632BE59BD9B4E019ULL)));
  }

  [[nodiscard]] Rng split(std::uint64_t key_a, std::uint64_t key_b) const noexcept {
    return split(key_a).split(key_b);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller (one value per call; simple and portable).
  double next_gaussian() noexcept {
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  // In-place Fisher-Yates shuffle (portable, unlike std::shuffle).
  template <typename T>
  void shuffle(std::vector<T>& items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t state_;
};

}  // namespace ciliagraph
