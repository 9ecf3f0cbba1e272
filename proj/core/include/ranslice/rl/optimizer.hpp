#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ranslice::rl {

enum class OptimizerKind { Sgd, Adam };

[[nodiscard]] OptimizerKind optimizer_from_string(std::string_view name);
[[nodiscard]] std::string_view to_string(OptimizerKind kind);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First-order update theta -= step(grad). Adam keeps per-parameter moments.
class Optimizer {
 public:
  Optimizer() = default;
  Optimizer(OptimizerConfig config, std::size_t parameter_count);

  void apply(std::span<double> params, std::span<const double> grad);

  [[nodiscard]] const OptimizerConfig& config() const { return config_; }
  [[nodiscard]] std::uint64_t steps() const { return t_; }

 private:
  OptimizerConfig config_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::uint64_t t_ = 0;
};

}  // namespace ranslice::rl
