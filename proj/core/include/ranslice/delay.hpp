#pragma once

#include <span>

#include "ranslice/types.hpp"

namespace ranslice::delay {

inline constexpr double kFiberPropagationSpeed = 2e8;  // m/s

struct FlowStats {
  double arrival_rate = 0.0;  // packets/s
  double service_rate = 0.0;  // packets/s
  double packet_bytes = 0.0;
  int assignment = 1;
};

/// M/M/1 sojourn z / (mu - lambda); +inf for an unstable queue, 0 when unassigned.
[[nodiscard]] double queueing_delay(const FlowStats& flow);

/// Service rate of a link of `rate_bps` for packets of mean size `mean_packet_bytes`.
[[nodiscard]] double service_rate(double rate_bps, double mean_packet_bytes);

/// Mean number in an M/M/1 system, rho / (1 - rho); +inf when rho >= 1.
[[nodiscard]] double mm1_occupancy(double arrival_rate, double service_rate);

struct TxDelays {
  double wireless = 0.0;
  double fronthaul = 0.0;
  double propagation = 0.0;
};

/// 8o/R over the air, 8o/capacity over the fronthaul and length/kappa propagation.
/// A zero radio rate gives an infinite wireless delay.
[[nodiscard]] TxDelays tx_delays(double packet_bytes, double car_rate_bps, double fronthaul_capacity_bps,
                                 double fronthaul_length_m, double kappa = kFiberPropagationSpeed);

struct DelayBreakdown {
  double queueing = 0.0;
  double wireless_tx = 0.0;
  double fronthaul_tx = 0.0;
  double propagation = 0.0;
  double total = 0.0;
};

[[nodiscard]] DelayBreakdown end_to_end(const FlowStats& flow, double car_rate_bps, double fronthaul_capacity_bps,
                                        double fronthaul_length_m, double kappa = kFiberPropagationSpeed);

/// 1 iff total <= budget.
[[nodiscard]] int budget_fulfillment(double total, double budget);

struct Satisfaction {
  double phi = 0.0;
  bool no_demand = false;
};

/// Share of the service's cars that are assigned and within budget. The two spans
/// are per car; an empty span yields phi 0 with the no-demand marker set.
[[nodiscard]] Satisfaction slice_satisfaction(std::span<const int> assigned, std::span<const int> fulfilled);

struct QueueStatus {
  double occupancy = 0.0;
  double status = 0.0;
};

/// status = max(capacity - occupancy, threshold).
[[nodiscard]] QueueStatus queue_status(double buffer_capacity, double buffer_threshold, double occupancy);

enum class Regime { Terminate, ScaleUp, ScaleDown, Neutral };

/// Terminate when status equals the capacity (checked first), scale up at the
/// threshold, scale down above it.
[[nodiscard]] Regime regime(double status, double buffer_capacity, double buffer_threshold);

/// Scaling factor: 0 (terminate), capacity/threshold (up), threshold/capacity (down), 1 otherwise.
[[nodiscard]] double orchestration(double status, double buffer_capacity, double buffer_threshold);

}  // namespace ranslice::delay
