#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace vqt {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Named substream of a root seed. Every random draw in a run flows through
/// one of these, so the draw sequence does not depend on thread scheduling.
///
///   auto rng = substream(seed, "shots", {step, point});
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                                 std::initializer_list<std::uint64_t> path = {}) {
  std::uint64_t s = mix64(root ^ fnv1a(tag));
  for (auto p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

inline Engine substream(std::uint64_t root, std::string_view tag,
                        std::initializer_list<std::uint64_t> path = {}) {
  return Engine(derive_seed(root, tag, path));
}

}  // namespace vqt
