#pragma once

#include <array>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ranslice/radio.hpp"
#include "ranslice/types.hpp"

/// Building blocks of the two control loops. Loop 1 runs per vO-DU every tick and
/// schedules each slice's RBs to cars; loop 2 runs every N2 ticks and moves RB
/// budgets between slices and their vO-DU pool.
namespace ranslice::loops {

enum class LoopAction : int { Keep = 0, ScaleUp = 1, ScaleDown = 2, Terminate = 3 };

inline constexpr int kActionCount = 4;
inline constexpr int kLoop2Period = 20;       // loop-1 ticks per loop-2 action
inline constexpr int kMaxRbsPerFlow = 40;

[[nodiscard]] std::string_view to_string(LoopAction action);
/// Throws std::out_of_range outside 0..3.
[[nodiscard]] LoopAction action_from_index(int index);

/// Budget the slice asks for under `action`: b, ceil(b*cap/thr), floor(b*thr/cap) or 0.
[[nodiscard]] RbCount effective_budget(LoopAction action, RbCount budget, double buffer_capacity,
                                       double buffer_threshold);

struct Loop1State {
  int cars_served = 0;
  int max_cars = 1;
  double omega = 1.0;
  double psi = 0.0;
  double buffer_capacity = 200.0;
  double buffer_threshold = 150.0;

  /// Min-max scaled (V/Vmax, omega/(cap/thr), (psi-thr)/(cap-thr)), each in [0, 1].
  [[nodiscard]] std::array<double, 3> encode() const;
};

struct Loop2State {
  RbCount free = 0;
  RbCount capacity = 1;
  double usage = 0.0;
  RbCount budget = 0;

  /// (free/cap, usage, budget/cap).
  [[nodiscard]] std::array<double, 3> encode() const;
};

struct SliceGrant {
  RbCount granted = 0;
  RbCount excess = 0;  // requested but not granted
};

/// Serves one vO-DU's slice requests for a tick. Each slice first receives
/// min(request, budget); requests above budget then draw on the free pool in
/// slice order. `budgets` sum to at most `capacity`.
[[nodiscard]] std::vector<SliceGrant> grant_requests(std::span<const RbCount> budgets,
                                                     std::span<const RbCount> requests, RbCount capacity);

using RateFn = std::function<double(std::size_t flow, const radio::RbIndex& rb)>;
using SatisfiedFn = std::function<bool(std::size_t flow, double rate_bps)>;

struct ScheduleResult {
  std::vector<radio::RBAssignment> assignments;
  std::vector<double> rates;      // per assignment, b/s
  std::vector<double> flow_rate;  // per flow, b/s
  std::vector<int> flow_rbs;      // per flow
  RbCount rbs_used = 0;
};

/// Round robin over flows that still miss their delay budget: each round hands the
/// next free RB of `rbs` to every such flow, until the flow is satisfied, holds
/// `max_rbs_per_flow` RBs, or the grid runs out. Flows satisfied at rate 0 (no
/// traffic) receive nothing. Each RB goes to exactly one car.
[[nodiscard]] ScheduleResult loop1_schedule(SliceId slice, std::span<const radio::RbIndex> rbs,
                                            std::span<const CarId> cars, std::span<const OruId> orus,
                                            const RateFn& rate, const SatisfiedFn& satisfied,
                                            int max_rbs_per_flow = kMaxRbsPerFlow);

/// nu = sum(rbs_per_car) * omega - budget.
[[nodiscard]] double coupling_nu(std::span<const int> rbs_per_car, double omega, RbCount budget);

enum class RewardMode { Hinge, Literal };

struct Penalties {
  double satisfaction_weight = 1.0;  // w
  double fronthaul = 1e-6;           // per b/s
  double orthogonality = 1.0;
  double coupling = 0.1;             // per RB
  double placement = 1.0;
  double capacity = 0.05;            // per RB
};

struct Loop1RewardInputs {
  double phi = 0.0;
  double fronthaul_capacity_bps = 0.0;
  double fronthaul_load_bps = 0.0;
  int max_cars_per_rb = 0;
  double nu = 0.0;
  RbCount free_rbs = 0;  // vO-DU pool the slice could scale into
  RbCount rejected_rbs = 0;
};

/// Hinge: w*phi + D_m*min(0, cap - load) + D_v*min(0, 1 - max cars per RB)
///        + D_z*min(0, free - nu) - D_z*rejected.
/// Literal: w*phi + D_m*(cap - load) + D_v*(1 - max cars per RB) + D_z*(-nu).
[[nodiscard]] double loop1_reward(const Loop1RewardInputs& in, const Penalties& p,
                                  RewardMode mode = RewardMode::Hinge);

struct Loop2RewardInputs {
  bool placed = true;
  double usage = 0.0;
  int placement_count = 1;
  RbCount capacity = 0;
  RbCount allocated = 0;
  double nu = 0.0;
};

/// Hinge: y*usage + D_d*min(0, 1 - placements) + D_b*min(0, cap - allocated - nu).
/// Literal: y*usage + D_d*(1 - placements) + D_b*(cap - allocated + nu).
[[nodiscard]] double loop2_reward(const Loop2RewardInputs& in, const Penalties& p,
                                  RewardMode mode = RewardMode::Hinge);

/// r2 + phi_dis * r1.
[[nodiscard]] double main_reward(double r2, double r1, double phi_dis);

struct BudgetProposal {
  RbCount proposed = 0;
  RbCount applied = 0;
  bool exceeded = false;  // proposal larger than the free pool
};

/// Loop-2 budget change for a slice: Keep 0, ScaleUp max(round(nu), step up),
/// ScaleDown min(round(nu), -step down), Terminate -budget. The steps are
/// ceil(b*ratio) - b and b - floor(b/ratio), at least 1 RB each. The applied
/// change is clamped to [-budget, free].
[[nodiscard]] BudgetProposal loop2_budget_update(LoopAction action, double nu, RbCount budget, RbCount free,
                                                 double scale_ratio = 1.0);

}  // namespace ranslice::loops
