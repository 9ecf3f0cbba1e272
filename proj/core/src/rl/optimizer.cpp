#include "ranslice/rl/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ranslice::rl {

OptimizerKind optimizer_from_string(std::string_view name)
{
  if (name == "sgd") {
    return OptimizerKind::Sgd;
  }
  if (name == "adam") {
    return OptimizerKind::Adam;
  }
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "' (expected sgd or adam)");
}

std::string_view to_string(OptimizerKind kind)
{
  return kind == OptimizerKind::Sgd ? "sgd" : "adam";
}

Optimizer::Optimizer(OptimizerConfig config, std::size_t parameter_count) : config_(config)
{
  if (!(config_.learning_rate > 0.0)) {
    throw std::invalid_argument("optimizer: learning rate must be positive");
  }
  if (config_.kind == OptimizerKind::Adam) {
    m_.assign(parameter_count, 0.0);
    v_.assign(parameter_count, 0.0);
  }
}

void Optimizer::apply(std::span<double> params, std::span<const double> grad)
{
  if (params.size() != grad.size()) {
    throw std::invalid_argument("optimizer: gradient size mismatch");
  }
  ++t_;
  const double lr = config_.learning_rate;
  if (config_.kind == OptimizerKind::Sgd) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] -= lr * grad[i];
    }
    return;
  }
  if (m_.size() != params.size()) {
    throw std::invalid_argument("optimizer: parameter count changed");
  }
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = b1 * m_[i] + (1.0 - b1) * grad[i];
    v_[i] = b2 * v_[i] + (1.0 - b2) * grad[i] * grad[i];
    params[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + config_.epsilon);
  }
}

}  // namespace ranslice::rl
