// Seeded random streams.
//
// Every random quantity is drawn from a std::mt19937_64 whose 64-bit seed is
// derived from (user seed, stream id, replica index) by SplitMix64 mixing.
// mt19937_64 output is fixed by the standard and the Boost.Random
// distributions used on top of it are portable source implementations, so a
// given seed reproduces bit-identical draws on every platform.
#pragma once

#include <cstdint>
#include <random>

namespace coxsr {

using Engine = std::mt19937_64;

/// Purposes a stream can be drawn for; keeps streams of one replica apart.
enum class Stream : std::uint64_t {
  kNoise = 1,
  kCounts = 2,
  kTickPlacement = 3,
  kHistogram = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream,
                                    std::uint64_t replica = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(stream)) ^
                    replica);
}

inline Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t replica = 0) {
  return Engine(derive_seed(seed, stream, replica));
}

}  // namespace coxsr
