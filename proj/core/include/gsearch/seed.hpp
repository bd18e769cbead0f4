#pragma once

#include <cstdint>
#include <initializer_list>

namespace gsearch {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stable hash of a sequence of integers; independent of platform and of
/// execution order.
constexpr std::uint64_t hash_fields(std::initializer_list<std::uint64_t> fields) {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (auto f : fields) h = mix64(h ^ mix64(f));
  return h;
}

/// Independent child stream of `seed`, labelled by `salt`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return hash_fields({seed, salt});
}

}  // namespace gsearch
