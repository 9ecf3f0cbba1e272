#include "ranslice/rl/policy.hpp"

#include <algorithm>
#include <cmath>

namespace ranslice::rl {

double EpsilonSchedule::value(std::uint64_t step) const
{
  const double horizon = fraction * static_cast<double>(total_steps);
  if (horizon <= 0.0) {
    return end;
  }
  const double progress = std::min(1.0, static_cast<double>(step) / horizon);
  return start + (end - start) * progress;
}

double actor_epsilon(double epsilon, int actor, double base)
{
  return epsilon * std::pow(base, actor);
}

int select_action(const QNetwork& network, std::span<const double> state, double epsilon, Rng& rng)
{
  // Always draw the coin so the stream advances identically whatever the outcome.
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double u = coin(rng);
  if (u < epsilon) {
    std::uniform_int_distribution<int> pick(0, network.output_size() - 1);
    return pick(rng);
  }
  return argmax(network.forward(state));
}

}  // namespace ranslice::rl
