#ifndef BSL_RNG_HPP
#define BSL_RNG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace bsl {

// SplitMix64 output function.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derive an independent substream key from a parent key and a label/index.
// Varying one component of a seed hierarchy leaves sibling streams fixed.
inline std::uint64_t derive_stream(std::uint64_t key, std::uint64_t index) {
  return splitmix64_mix(key ^ splitmix64_mix(index + 0x632BE59BD9B4E019ull));
}

inline std::uint64_t derive_stream(std::uint64_t key, std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a over the label bytes
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return splitmix64_mix(key ^ splitmix64_mix(h));
}

// Counter-based generator: the i-th output is a pure function of (key, i),
// which makes streams splittable and trivially reproducible. The output
// sequence is SplitMix64 with the key as starting state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ull;
    return splitmix64_mix(key_ + counter_);
  }

  // Uniform on [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on {0, 1, ..., n-1} by rejection (unbiased).
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  // Standard normal via Box-Muller; avoids std::normal_distribution so that
  // the sequence is identical across standard-library implementations.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // k distinct values from {1, ..., m}, sorted ascending.
  std::vector<int> sample_subset(int m, int k) {
    std::vector<int> pool(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    for (int i = 0; i < k; ++i) {
      const auto j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(m - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bsl

#endif  // BSL_RNG_HPP
