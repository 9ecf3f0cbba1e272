#pragma once

#include <cstdint>
#include <random>

namespace ranslice {

using Rng = std::mt19937_64;

/// Independent, reproducible RNG stream derived from a run seed and a stream id.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

namespace streams {
inline constexpr std::uint64_t kAuction = 1;
inline constexpr std::uint64_t kCars = 2;
inline constexpr std::uint64_t kMobility = 3;
inline constexpr std::uint64_t kSubscriptions = 4;
inline constexpr std::uint64_t kNetworkInit = 5;
inline constexpr std::uint64_t kReplaySampling = 6;
inline constexpr std::uint64_t kLoop2Policy = 7;
// Per-entity streams are offset by the entity id.
inline constexpr std::uint64_t kChannelBase = 1'000;
inline constexpr std::uint64_t kTrafficBase = 2'000;
inline constexpr std::uint64_t kActorPolicyBase = 3'000;
}  // namespace streams

}  // namespace ranslice
