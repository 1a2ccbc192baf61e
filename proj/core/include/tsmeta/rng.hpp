#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace tsmeta {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a, used to fold series ids into RNG keys.
constexpr std::uint64_t hash_string(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Order-sensitive combination of key parts into one stream key.
constexpr std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t k = 0x243f6a8885a308d3ULL;
  for (std::uint64_t p : parts) k = mix64(k ^ mix64(p));
  return k;
}

/// Counter-based generator: the i-th draw depends only on (key, i), so any
/// stream can be replayed independently of every other stream.
class KeyedRng {
 public:
  explicit constexpr KeyedRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next() noexcept { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); n > 0.
  constexpr std::uint64_t below(std::uint64_t n) noexcept {
    // Modulo bias is below n / 2^64, irrelevant for the small n used here.
    return next() % n;
  }

  /// Standard normal via Box-Muller.
  double normal() noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace tsmeta
