#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace gsamp {

using Seed = std::uint64_t;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and a set of keys.
///
/// The tag is hashed with 64-bit FNV-1a; the result and each numeric key are
/// folded in order through `mix64`. Floating-point keys should be passed via
/// `key_of(double)` so that the bit pattern, not a rounded value, is hashed.
Seed derive_seed(Seed master, std::string_view tag, std::uint64_t key1 = 0,
                 std::uint64_t key2 = 0, std::uint64_t key3 = 0) noexcept;

std::uint64_t key_of(double value) noexcept;

/// Seedable generator with platform-stable variates.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The std distributions are not, so every variate here is built
/// from raw engine words: uniforms take the top 53 bits, integers use
/// rejection sampling, and Gaussians use the Box-Muller transform (the second
/// value of each pair is cached).
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Uniform on (0, 1).
  double uniform_open() noexcept;
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }
  /// Standard normal.
  double gaussian() noexcept;

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// k distinct indices from [0, n) in draw order (partial Fisher-Yates).
std::vector<int> sample_without_replacement(Rng& rng, int n, int k);

}  // namespace gsamp
