#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>

#include "ranslice/rl/dqn.hpp"
#include "ranslice/rl/optimizer.hpp"
#include "ranslice/rl/qnetwork.hpp"
#include "ranslice/rl/replay_memory.hpp"

namespace ranslice::rl {

/// Copy-on-publish parameter broadcast: actors hold immutable snapshots and pick
/// up the newest one when they choose to.
class ParameterServer {
 public:
  explicit ParameterServer(const QNetwork& initial);

  void publish(const QNetwork& network);
  [[nodiscard]] std::shared_ptr<const QNetwork> snapshot() const;
  [[nodiscard]] std::uint64_t version() const;

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const QNetwork> current_;
  std::uint64_t version_ = 0;
};

struct LearnerConfig {
  std::size_t batch_size = 32;
  std::uint64_t target_sync_period = 250;
  std::size_t learning_starts = 256;
  std::uint64_t publish_period = 1;
  double priority_epsilon = kPriorityEpsilon;
  OptimizerConfig optimizer;
};

class Learner {
 public:
  Learner(QNetwork initial, LearnerConfig config, ReplayMemory& memory, ParameterServer& server, Rng sampling_rng);

  /// Samples a batch, trains, refreshes priorities, syncs the target and publishes
  /// on their periods. Returns nothing until the memory holds `learning_starts`
  /// entries. A non-finite loss skips the update and sets diverged().
  std::optional<TrainResult> step();

  [[nodiscard]] const QNetwork& online() const { return online_; }
  [[nodiscard]] const QNetwork& target() const { return target_; }
  [[nodiscard]] std::uint64_t train_steps() const { return train_steps_; }
  [[nodiscard]] std::uint64_t target_syncs() const { return target_syncs_; }
  [[nodiscard]] bool diverged() const { return diverged_; }
  [[nodiscard]] const LearnerConfig& config() const { return config_; }
  [[nodiscard]] Rng& sampling_rng() { return rng_; }

  /// Restores networks and the step counter, e.g. from a checkpoint.
  void restore(QNetwork online, QNetwork target, std::uint64_t train_steps);

 private:
  LearnerConfig config_;
  ReplayMemory& memory_;
  ParameterServer& server_;
  Rng rng_;
  QNetwork online_;
  QNetwork target_;
  Optimizer optimizer_;
  std::uint64_t train_steps_ = 0;
  std::uint64_t target_syncs_ = 0;
  bool diverged_ = false;
};

}  // namespace ranslice::rl
