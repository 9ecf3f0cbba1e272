#pragma once

#include <cstdint>
#include <span>

#include "ranslice/rl/qnetwork.hpp"
#include "ranslice/rng.hpp"

namespace ranslice::rl {

/// Linear decay from `start` to `end` over the first `fraction` of `total_steps`.
struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.02;
  double fraction = 0.2;
  std::uint64_t total_steps = 10'000;

  [[nodiscard]] double value(std::uint64_t step) const;
};

/// Per-actor exploration: eps * base^actor.
[[nodiscard]] double actor_epsilon(double epsilon, int actor, double base = 0.9);

/// Epsilon-greedy over the network outputs; greedy ties go to the lowest index.
[[nodiscard]] int select_action(const QNetwork& network, std::span<const double> state, double epsilon, Rng& rng);

}  // namespace ranslice::rl
