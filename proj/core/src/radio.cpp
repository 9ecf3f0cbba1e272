#include "ranslice/radio.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace ranslice::radio {

Numerology Numerology::from_index(int index)
{
  if (index < 0 || index > 4) {
    throw std::invalid_argument("numerology index must lie in 0..4, got " + std::to_string(index));
  }
  Numerology n;
  n.index = index;
  n.subcarrier_spacing_hz = 15e3 * static_cast<double>(1 << index);
  n.tti_duration_s = 1e-3 / static_cast<double>(1 << index);
  return n;
}

double snr(const ChannelState& channel, double distance, int placed, double path_loss_exponent, PathLossMode mode)
{
  if (!(distance > 0.0)) {
    throw std::domain_error("snr: distance must be positive");
  }
  if (!(channel.tx_power_w > 0.0) || !(channel.noise_power_w > 0.0)) {
    throw std::invalid_argument("snr: tx power and noise power must be positive");
  }
  if (placed == 0) {
    return 0.0;
  }
  const double path = mode == PathLossMode::Literal ? distance : std::pow(distance, -path_loss_exponent);
  return channel.gain() * channel.tx_power_w * path / channel.noise_power_w;
}

double rb_rate(const Numerology& numerology, double snr, int coverage)
{
  if (coverage == 0 || snr <= 0.0) {
    return 0.0;
  }
  return numerology.rb_bandwidth_hz() * std::log2(1.0 + snr);
}

double car_rate(CarId car, std::span<const RBAssignment> assignments, std::span<const double> rates)
{
  if (assignments.size() != rates.size()) {
    throw std::invalid_argument("car_rate: one rate per assignment expected");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i].car_id == car && assignments[i].decision == 1) {
      total += rates[i];
    }
  }
  return total;
}

std::vector<OrthogonalityViolation> check_orthogonality(std::span<const RBAssignment> assignments)
{
  std::map<RbIndex, std::set<CarId>> holders;
  for (const auto& a : assignments) {
    if (a.decision == 1) {
      holders[a.rb].insert(a.car_id);
    }
  }
  std::vector<OrthogonalityViolation> violations;
  for (const auto& [rb, cars] : holders) {
    if (cars.size() > 1) {
      violations.push_back({rb, std::vector<CarId>(cars.begin(), cars.end())});
    }
  }
  return violations;
}

ChannelSampler::ChannelSampler(Rng rng, const ChannelParams& params) : rng_(std::move(rng)), params_(params)
{
  if (params_.error_variance < 0.0) {
    throw std::invalid_argument("channel: error variance must be non-negative");
  }
}

ChannelState ChannelSampler::sample()
{
  // CN(0, v): real and imaginary parts each N(0, v/2).
  const double est_scale = std::sqrt(0.5);
  const double err_scale = std::sqrt(params_.error_variance / 2.0);
  ChannelState state;
  state.estimated_csi = {est_scale * unit_(rng_), est_scale * unit_(rng_)};
  state.estimation_error = {err_scale * unit_(rng_), err_scale * unit_(rng_)};
  state.tx_power_w = params_.tx_power_w;
  state.noise_power_w = params_.noise_power_w;
  return state;
}

}  // namespace ranslice::radio
