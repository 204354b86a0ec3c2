#pragma once

#include <cstdint>
#include <random>

namespace magt {

// splitmix64 step; used to derive independent per-run/per-trial seeds from a
// master seed. split_seed(master, k) is the documented splitting rule for
// batch runs: trial k of a run seeded with `master` uses
// mt19937_64(split_seed(master, k)).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

}  // namespace magt
