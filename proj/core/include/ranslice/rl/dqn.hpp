#pragma once

#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "ranslice/rl/optimizer.hpp"
#include "ranslice/rl/qnetwork.hpp"
#include "ranslice/rl/replay_memory.hpp"

namespace ranslice::rl {

inline constexpr double kPriorityEpsilon = 1e-3;

/// Q(s, argmax_a Q(s, a; online); target): double-DQN bootstrap value.
[[nodiscard]] double bootstrap_value(const QNetwork& online, const QNetwork& target, std::span<const double> state);

/// sum_{j=1..n} gamma^{j-1} r_{t+j} + gamma^n * bootstrap_value(s_{t+n}).
/// An empty `bootstrap_state` marks a terminal window (no bootstrap term).
[[nodiscard]] double n_step_return(std::span<const double> rewards, double gamma, const QNetwork& online,
                                   const QNetwork& target, std::span<const double> bootstrap_state);

/// Turns a stream of one-step transitions into n-step experiences.
class NStepAccumulator {
 public:
  NStepAccumulator(int n, double gamma);

  /// Returns the experience that starts n transitions back, once available.
  std::optional<Experience> push(std::vector<double> state, int action, double reward,
                                 std::vector<double> next_state, int source = 0);

  /// Emits the pending shorter windows. Terminal windows get discount 0.
  std::vector<Experience> flush(bool terminal);

  [[nodiscard]] std::size_t pending() const { return window_.size(); }

 private:
  struct Step {
    std::vector<double> state;
    int action;
    double reward;
    std::vector<double> next_state;
    int source;
  };
  Experience make(std::size_t length, bool terminal) const;

  int n_;
  double gamma_;
  std::deque<Step> window_;
};

struct TrainResult {
  bool ok = true;                 // false when the loss was not finite; no update applied
  double loss = 0.0;              // mean of 0.5 * td^2
  std::vector<double> td_errors;
  std::vector<double> priorities; // |td| + epsilon
};

/// One gradient step on the mean loss over `batch`. Targets come from the frozen
/// `target` network with double-DQN action selection under `online`.
TrainResult train_step(QNetwork& online, const QNetwork& target, Optimizer& optimizer,
                       std::span<const Experience> batch, double priority_epsilon = kPriorityEpsilon);

}  // namespace ranslice::rl
