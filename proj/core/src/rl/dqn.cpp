#include "ranslice/rl/dqn.hpp"

#include <cmath>
#include <stdexcept>

namespace ranslice::rl {

double bootstrap_value(const QNetwork& online, const QNetwork& target, std::span<const double> state)
{
  const auto q_online = online.forward(state);
  const int best = argmax(q_online);
  return target.forward(state)[best];
}

double n_step_return(std::span<const double> rewards, double gamma, const QNetwork& online, const QNetwork& target,
                     std::span<const double> bootstrap_state)
{
  double g = 0.0;
  double discount = 1.0;
  for (const double r : rewards) {
    g += discount * r;
    discount *= gamma;
  }
  if (!bootstrap_state.empty() && discount != 0.0) {
    g += discount * bootstrap_value(online, target, bootstrap_state);
  }
  return g;
}

NStepAccumulator::NStepAccumulator(int n, double gamma) : n_(n), gamma_(gamma)
{
  if (n < 1) {
    throw std::invalid_argument("NStepAccumulator: n must be at least 1");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("NStepAccumulator: gamma must lie in [0, 1]");
  }
}

Experience NStepAccumulator::make(std::size_t length, bool terminal) const
{
  Experience e;
  e.state = window_.front().state;
  e.action = window_.front().action;
  e.source = window_.front().source;
  double discount = 1.0;
  for (std::size_t j = 0; j < length; ++j) {
    e.reward += discount * window_[j].reward;
    discount *= gamma_;
  }
  e.next_state = window_[length - 1].next_state;
  e.discount = terminal ? 0.0 : discount;
  return e;
}

std::optional<Experience> NStepAccumulator::push(std::vector<double> state, int action, double reward,
                                                 std::vector<double> next_state, int source)
{
  window_.push_back({std::move(state), action, reward, std::move(next_state), source});
  if (window_.size() < static_cast<std::size_t>(n_)) {
    return std::nullopt;
  }
  Experience e = make(static_cast<std::size_t>(n_), false);
  window_.pop_front();
  return e;
}

std::vector<Experience> NStepAccumulator::flush(bool terminal)
{
  std::vector<Experience> out;
  while (!window_.empty()) {
    out.push_back(make(window_.size(), terminal));
    window_.pop_front();
  }
  return out;
}

TrainResult train_step(QNetwork& online, const QNetwork& target, Optimizer& optimizer,
                       std::span<const Experience> batch, double priority_epsilon)
{
  TrainResult result;
  if (batch.empty()) {
    return result;
  }
  std::vector<double> grad(online.parameter_count(), 0.0);
  double loss = 0.0;
  result.td_errors.reserve(batch.size());
  result.priorities.reserve(batch.size());
  for (const auto& e : batch) {
    double g = e.reward;
    if (e.discount != 0.0) {
      g += e.discount * bootstrap_value(online, target, e.next_state);
    }
    const double td = online.accumulate_gradient(e.state, e.action, g, grad);
    loss += 0.5 * td * td;
    result.td_errors.push_back(td);
    result.priorities.push_back(std::abs(td) + priority_epsilon);
  }
  const double scale = 1.0 / static_cast<double>(batch.size());
  result.loss = loss * scale;
  if (!std::isfinite(result.loss)) {
    result.ok = false;
    return result;
  }
  for (auto& g : grad) {
    g *= scale;
  }
  optimizer.apply(online.parameters(), grad);
  return result;
}

}  // namespace ranslice::rl
