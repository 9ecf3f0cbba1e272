#pragma once

#include <cstdint>

#include "ranslice/rng.hpp"

namespace ranslice::delay {

struct Mm1Result {
  std::uint64_t packets = 0;
  double mean_sojourn = 0.0;     // waiting plus service, s
  double mean_queue_wait = 0.0;  // waiting before service, s
  double mean_in_system = 0.0;   // time-averaged number of packets
  double horizon = 0.0;          // s
};

/// Event-driven FIFO M/M/1 queue. Runs until `packets` customers have departed.
/// Throws std::invalid_argument unless both rates are positive.
[[nodiscard]] Mm1Result simulate_mm1(double arrival_rate, double service_rate, std::uint64_t packets, Rng& rng);

}  // namespace ranslice::delay
