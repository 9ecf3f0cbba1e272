#pragma once

#include <span>
#include <vector>

#include "ranslice/rng.hpp"

namespace ranslice::rl {

/// Fully connected Q-network, ReLU hidden layers, identity output.
///
/// Parameters live in one flat vector: for each layer, the weight matrix
/// W[out][in] in row-major order followed by the bias vector b[out].
class QNetwork {
 public:
  QNetwork() = default;
  /// Zero-initialised network. Needs at least an input and an output layer.
  explicit QNetwork(std::vector<int> layer_sizes);
  /// He-initialised weights, zero biases.
  QNetwork(std::vector<int> layer_sizes, Rng& rng);

  [[nodiscard]] const std::vector<int>& layer_sizes() const { return sizes_; }
  [[nodiscard]] int input_size() const { return sizes_.front(); }
  [[nodiscard]] int output_size() const { return sizes_.back(); }
  [[nodiscard]] std::size_t parameter_count() const { return params_.size(); }

  [[nodiscard]] std::vector<double>& parameters() { return params_; }
  [[nodiscard]] const std::vector<double>& parameters() const { return params_; }

  /// Offset of W[layer][row][col] / b[layer][row] in the flat vector.
  [[nodiscard]] std::size_t weight_index(int layer, int row, int col) const;
  [[nodiscard]] std::size_t bias_index(int layer, int row) const;

  [[nodiscard]] std::vector<double> forward(std::span<const double> input) const;
  /// Row-major batch of inputs; returns row-major batch of outputs.
  [[nodiscard]] std::vector<double> forward_batch(std::span<const double> inputs, std::size_t batch) const;

  /// Adds d/dtheta of 0.5*(target - Q(input, action))^2 into `grad` and returns
  /// the TD error target - Q(input, action).
  double accumulate_gradient(std::span<const double> input, int action, double target,
                             std::span<double> grad) const;

 private:
  std::vector<int> sizes_;
  std::vector<std::size_t> offsets_;  // start of each layer's block
  std::vector<double> params_;
};

/// Index of the largest value; ties go to the lowest index.
[[nodiscard]] int argmax(std::span<const double> values);

}  // namespace ranslice::rl
