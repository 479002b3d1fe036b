#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace windbid {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to turn (seed, salt) pairs into
/// well-separated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent stream seed from a base seed and a role label.
/// Every component (generator, noise, strategy, ...) gets its own stream
/// so that adding one consumer never shifts another's draws.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view role) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : role) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix64(base ^ h);
}

inline Rng make_rng(std::uint64_t base, std::string_view role) {
  return Rng(derive_seed(base, role));
}

}  // namespace windbid
