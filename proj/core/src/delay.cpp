#include "ranslice/delay.hpp"

#include <algorithm>
#include <stdexcept>

namespace ranslice::delay {

double queueing_delay(const FlowStats& flow)
{
  if (flow.assignment == 0) {
    return 0.0;
  }
  if (flow.service_rate <= flow.arrival_rate) {
    return kInfinity;
  }
  return static_cast<double>(flow.assignment) / (flow.service_rate - flow.arrival_rate);
}

double service_rate(double rate_bps, double mean_packet_bytes)
{
  if (!(mean_packet_bytes > 0.0)) {
    throw std::invalid_argument("service_rate: mean packet size must be positive");
  }
  return std::max(0.0, rate_bps) / (8.0 * mean_packet_bytes);
}

double mm1_occupancy(double arrival_rate, double service_rate)
{
  if (arrival_rate <= 0.0) {
    return 0.0;
  }
  if (service_rate <= arrival_rate) {
    return kInfinity;
  }
  const double rho = arrival_rate / service_rate;
  return rho / (1.0 - rho);
}

TxDelays tx_delays(double packet_bytes, double car_rate_bps, double fronthaul_capacity_bps, double fronthaul_length_m,
                   double kappa)
{
  if (!(fronthaul_capacity_bps > 0.0) || !(kappa > 0.0)) {
    throw std::invalid_argument("tx_delays: fronthaul capacity and propagation speed must be positive");
  }
  TxDelays d;
  const double bits = 8.0 * packet_bytes;
  if (bits == 0.0) {
    d.wireless = 0.0;
  } else {
    d.wireless = car_rate_bps > 0.0 ? bits / car_rate_bps : kInfinity;
  }
  d.fronthaul = bits / fronthaul_capacity_bps;
  d.propagation = fronthaul_length_m / kappa;
  return d;
}

DelayBreakdown end_to_end(const FlowStats& flow, double car_rate_bps, double fronthaul_capacity_bps,
                          double fronthaul_length_m, double kappa)
{
  const auto tx = tx_delays(flow.packet_bytes, car_rate_bps, fronthaul_capacity_bps, fronthaul_length_m, kappa);
  DelayBreakdown b;
  b.queueing = queueing_delay(flow);
  b.wireless_tx = tx.wireless;
  b.fronthaul_tx = tx.fronthaul;
  b.propagation = tx.propagation;
  b.total = b.queueing + b.wireless_tx + b.fronthaul_tx + b.propagation;
  return b;
}

int budget_fulfillment(double total, double budget)
{
  return total <= budget ? 1 : 0;
}

Satisfaction slice_satisfaction(std::span<const int> assigned, std::span<const int> fulfilled)
{
  if (assigned.size() != fulfilled.size()) {
    throw std::invalid_argument("slice_satisfaction: one fulfilment flag per car expected");
  }
  if (assigned.empty()) {
    return {0.0, true};
  }
  int satisfied = 0;
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    satisfied += assigned[i] * fulfilled[i];
  }
  return {static_cast<double>(satisfied) / static_cast<double>(assigned.size()), false};
}

QueueStatus queue_status(double buffer_capacity, double buffer_threshold, double occupancy)
{
  if (!(buffer_threshold < buffer_capacity)) {
    throw std::invalid_argument("queue_status: threshold must be below capacity");
  }
  return {occupancy, std::max(buffer_capacity - occupancy, buffer_threshold)};
}

Regime regime(double status, double buffer_capacity, double buffer_threshold)
{
  if (status == buffer_capacity) {
    return Regime::Terminate;
  }
  if (status == buffer_threshold) {
    return Regime::ScaleUp;
  }
  if (status > buffer_threshold) {
    return Regime::ScaleDown;
  }
  return Regime::Neutral;
}

double orchestration(double status, double buffer_capacity, double buffer_threshold)
{
  switch (regime(status, buffer_capacity, buffer_threshold)) {
    case Regime::Terminate:
      return 0.0;
    case Regime::ScaleUp:
      return buffer_capacity / buffer_threshold;
    case Regime::ScaleDown:
      return buffer_threshold / buffer_capacity;
    case Regime::Neutral:
      break;
  }
  return 1.0;
}

}  // namespace ranslice::delay
