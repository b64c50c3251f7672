#include "gsamp/rng.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "gsamp/errors.hpp"

namespace gsamp {

Seed derive_seed(Seed master, std::string_view tag, std::uint64_t key1,
                 std::uint64_t key2, std::uint64_t key3) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = mix64(master ^ h);
  s = mix64(s ^ key1);
  s = mix64(s ^ key2);
  s = mix64(s ^ key3);
  return s;
}

std::uint64_t key_of(double value) noexcept {
  if (value == 0.0) value = 0.0;  // fold -0 onto +0
  return std::bit_cast<std::uint64_t>(value);
}

double Rng::uniform() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open() noexcept {
  return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
}

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

double Rng::gaussian() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<int> sample_without_replacement(Rng& rng, int n, int k) {
  if (k < 0 || k > n) throw InvalidArgument("sample_without_replacement: k must lie in [0, n]");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace gsamp
