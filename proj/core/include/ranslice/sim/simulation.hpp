#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ranslice/sim/config.hpp"

namespace ranslice::sim {

struct RunOptions {
  /// Uniformly random actions for both loops and no learning.
  bool random_policy = false;
  /// Output directory; empty keeps everything in memory.
  std::filesystem::path output_dir;
};

struct SliceSummary {
  SliceId id = 0;
  VoduId vodu = 0;
  ServiceId service = 0;
  TenantId tenant = 0;
  int flows = 0;
  RbCount initial_budget = 0;
  RbCount final_budget = 0;
  bool has_demand = false;
  // Satisfaction over the final 10% of ticks.
  double phi_mean = 0.0;
  double phi_min = 0.0;
  double phi_p10 = 0.0;
  double phi_median = 0.0;
  double phi_max = 0.0;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  bool random_policy = false;
  std::size_t vodus = 0;

  // Auction and placement.
  std::size_t auction_winners = 0;
  RbCount allocated_rbs = 0;
  RbCount unallocated_rbs = 0;
  double welfare = 0.0;
  double revenue = 0.0;
  std::size_t unplaced_slices = 0;
  int dropped_flows = 0;

  /// Main reward per tick, averaged over vO-DUs hosting slices.
  std::vector<double> step_reward;
  /// Mean satisfaction per tick over slices with demand.
  std::vector<double> step_phi;
  double first_window_reward = 0.0;
  double final_window_reward = 0.0;
  double final_phi = 0.0;
  double final_usage = 0.0;

  // Structural checks.
  std::uint64_t capacity_checks = 0;
  std::uint64_t capacity_ok = 0;
  std::uint64_t orthogonality_violations = 0;
  std::uint64_t placement_violations = 0;
  std::uint64_t conservation_checks = 0;
  std::uint64_t conservation_failures = 0;
  std::uint64_t loop2_steps = 0;
  std::map<std::string, std::uint64_t> events;

  std::vector<SliceSummary> slices;
  std::uint64_t train_steps = 0;
  bool diverged = false;

  [[nodiscard]] double capacity_ok_fraction() const
  {
    return capacity_checks == 0 ? 1.0 : static_cast<double>(capacity_ok) / static_cast<double>(capacity_checks);
  }
};

/// Names of the structured events; every penalty that fires is logged under one of them.
namespace events {
inline constexpr const char* kLoop1CapacityClamp = "loop1_capacity_clamp";
inline constexpr const char* kCouplingExcess = "coupling_excess";
inline constexpr const char* kFronthaulOverload = "fronthaul_overload";
inline constexpr const char* kOrthogonality = "rb_orthogonality";
inline constexpr const char* kDuplicatePlacement = "duplicate_placement";
inline constexpr const char* kBudgetOverflow = "rb_budget_overflow";
inline constexpr const char* kScalingOverrun = "scaling_overrun";
}  // namespace events

/// Auction, placement, then `config.run.steps` ticks of both loops. Writes the
/// run artefacts when `options.output_dir` is set.
[[nodiscard]] RunReport run(const ScenarioConfig& config, const RunOptions& options = {});

/// Same environment driven by uniformly random actions without learning.
[[nodiscard]] RunReport baseline_random(const ScenarioConfig& config, RunOptions options = {});

}  // namespace ranslice::sim
