#include "ranslice/rl/learner.hpp"

#include <stdexcept>

namespace ranslice::rl {

ParameterServer::ParameterServer(const QNetwork& initial) : current_(std::make_shared<const QNetwork>(initial)) {}

void ParameterServer::publish(const QNetwork& network)
{
  auto copy = std::make_shared<const QNetwork>(network);
  std::lock_guard lock(mutex_);
  current_ = std::move(copy);
  ++version_;
}

std::shared_ptr<const QNetwork> ParameterServer::snapshot() const
{
  std::lock_guard lock(mutex_);
  return current_;
}

std::uint64_t ParameterServer::version() const
{
  std::lock_guard lock(mutex_);
  return version_;
}

Learner::Learner(QNetwork initial, LearnerConfig config, ReplayMemory& memory, ParameterServer& server,
                 Rng sampling_rng)
    : config_(config),
      memory_(memory),
      server_(server),
      rng_(std::move(sampling_rng)),
      online_(initial),
      target_(std::move(initial)),
      optimizer_(config.optimizer, online_.parameter_count())
{
  if (config_.batch_size == 0 || config_.target_sync_period == 0 || config_.publish_period == 0) {
    throw std::invalid_argument("learner: batch size and periods must be positive");
  }
}

std::optional<TrainResult> Learner::step()
{
  if (memory_.size() < std::max<std::size_t>(config_.learning_starts, 1)) {
    return std::nullopt;
  }
  const auto batch = memory_.sample(config_.batch_size, rng_);
  auto result = train_step(online_, target_, optimizer_, batch.items, config_.priority_epsilon);
  if (!result.ok) {
    diverged_ = true;
    return result;
  }
  memory_.update_priorities(batch.ids, result.priorities);
  ++train_steps_;
  if (train_steps_ % config_.target_sync_period == 0) {
    target_ = online_;
    ++target_syncs_;
  }
  if (train_steps_ % config_.publish_period == 0) {
    server_.publish(online_);
  }
  return result;
}

void Learner::restore(QNetwork online, QNetwork target, std::uint64_t train_steps)
{
  if (online.layer_sizes() != online_.layer_sizes() || target.layer_sizes() != online_.layer_sizes()) {
    throw std::invalid_argument("learner: restored network shape differs");
  }
  online_ = std::move(online);
  target_ = std::move(target);
  train_steps_ = train_steps;
  server_.publish(online_);
}

}  // namespace ranslice::rl
