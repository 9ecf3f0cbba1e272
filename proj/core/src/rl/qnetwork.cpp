#include "ranslice/rl/qnetwork.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranslice::rl {

QNetwork::QNetwork(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes))
{
  if (sizes_.size() < 2) {
    throw std::invalid_argument("QNetwork: need at least input and output layers");
  }
  for (const int s : sizes_) {
    if (s < 1) {
      throw std::invalid_argument("QNetwork: layer sizes must be positive");
    }
  }
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    offsets_.push_back(offset);
    offset += static_cast<std::size_t>(sizes_[l + 1]) * (static_cast<std::size_t>(sizes_[l]) + 1);
  }
  params_.assign(offset, 0.0);
}

QNetwork::QNetwork(std::vector<int> layer_sizes, Rng& rng) : QNetwork(std::move(layer_sizes))
{
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    std::normal_distribution<double> he(0.0, std::sqrt(2.0 / in));
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) {
        params_[weight_index(static_cast<int>(l), r, c)] = he(rng);
      }
    }
  }
}

std::size_t QNetwork::weight_index(int layer, int row, int col) const
{
  return offsets_[static_cast<std::size_t>(layer)] + static_cast<std::size_t>(row) * sizes_[layer] + col;
}

std::size_t QNetwork::bias_index(int layer, int row) const
{
  return offsets_[static_cast<std::size_t>(layer)] +
         static_cast<std::size_t>(sizes_[layer + 1]) * sizes_[layer] + row;
}

std::vector<double> QNetwork::forward(std::span<const double> input) const
{
  if (input.size() != static_cast<std::size_t>(input_size())) {
    throw std::invalid_argument("QNetwork::forward: input size mismatch");
  }
  std::vector<double> a(input.begin(), input.end());
  const int layers = static_cast<int>(sizes_.size()) - 1;
  for (int l = 0; l < layers; ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const double* w = params_.data() + offsets_[l];
    const double* b = w + static_cast<std::size_t>(out) * in;
    std::vector<double> z(static_cast<std::size_t>(out));
    for (int r = 0; r < out; ++r) {
      double s = b[r];
      const double* row = w + static_cast<std::size_t>(r) * in;
      for (int c = 0; c < in; ++c) {
        s += row[c] * a[c];
      }
      z[r] = (l + 1 < layers) ? std::max(0.0, s) : s;
    }
    a.swap(z);
  }
  return a;
}

std::vector<double> QNetwork::forward_batch(std::span<const double> inputs, std::size_t batch) const
{
  const auto in = static_cast<std::size_t>(input_size());
  const auto out = static_cast<std::size_t>(output_size());
  if (inputs.size() != batch * in) {
    throw std::invalid_argument("QNetwork::forward_batch: input size mismatch");
  }
  std::vector<double> outputs;
  outputs.reserve(batch * out);
  for (std::size_t i = 0; i < batch; ++i) {
    const auto q = forward(inputs.subspan(i * in, in));
    outputs.insert(outputs.end(), q.begin(), q.end());
  }
  return outputs;
}

double QNetwork::accumulate_gradient(std::span<const double> input, int action, double target,
                                     std::span<double> grad) const
{
  if (grad.size() != params_.size()) {
    throw std::invalid_argument("QNetwork::accumulate_gradient: gradient size mismatch");
  }
  if (action < 0 || action >= output_size()) {
    throw std::out_of_range("QNetwork::accumulate_gradient: action out of range");
  }
  if (input.size() != static_cast<std::size_t>(input_size())) {
    throw std::invalid_argument("QNetwork::accumulate_gradient: input size mismatch");
  }
  const int layers = static_cast<int>(sizes_.size()) - 1;

  // Forward pass keeping every activation.
  std::vector<std::vector<double>> acts;
  acts.emplace_back(input.begin(), input.end());
  for (int l = 0; l < layers; ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const double* w = params_.data() + offsets_[l];
    const double* b = w + static_cast<std::size_t>(out) * in;
    std::vector<double> z(static_cast<std::size_t>(out));
    for (int r = 0; r < out; ++r) {
      double s = b[r];
      for (int c = 0; c < in; ++c) {
        s += w[static_cast<std::size_t>(r) * in + c] * acts.back()[c];
      }
      z[r] = (l + 1 < layers) ? std::max(0.0, s) : s;
    }
    acts.push_back(std::move(z));
  }

  const double td = target - acts.back()[action];

  // dL/dQ_a = -(target - Q_a); other outputs do not enter the loss.
  std::vector<double> delta(static_cast<std::size_t>(output_size()), 0.0);
  delta[action] = -td;

  for (int l = layers - 1; l >= 0; --l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const double* w = params_.data() + offsets_[l];
    double* gw = grad.data() + offsets_[l];
    double* gb = gw + static_cast<std::size_t>(out) * in;
    const auto& a_in = acts[l];
    for (int r = 0; r < out; ++r) {
      if (delta[r] == 0.0) {
        continue;
      }
      gb[r] += delta[r];
      for (int c = 0; c < in; ++c) {
        gw[static_cast<std::size_t>(r) * in + c] += delta[r] * a_in[c];
      }
    }
    if (l == 0) {
      break;
    }
    std::vector<double> prev(static_cast<std::size_t>(in), 0.0);
    for (int r = 0; r < out; ++r) {
      if (delta[r] == 0.0) {
        continue;
      }
      for (int c = 0; c < in; ++c) {
        prev[c] += w[static_cast<std::size_t>(r) * in + c] * delta[r];
      }
    }
    // ReLU derivative of the hidden layer feeding this one.
    for (int c = 0; c < in; ++c) {
      if (a_in[c] <= 0.0) {
        prev[c] = 0.0;
      }
    }
    delta.swap(prev);
  }
  return td;
}

int argmax(std::span<const double> values)
{
  if (values.empty()) {
    throw std::invalid_argument("argmax: empty input");
  }
  int best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace ranslice::rl
