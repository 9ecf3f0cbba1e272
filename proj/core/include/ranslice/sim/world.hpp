#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ranslice/auction.hpp"
#include "ranslice/auction_io.hpp"
#include "ranslice/loops.hpp"
#include "ranslice/mobility.hpp"
#include "ranslice/radio.hpp"
#include "ranslice/rng.hpp"
#include "ranslice/sim/config.hpp"
#include "ranslice/slicing.hpp"
#include "ranslice/trace.hpp"

namespace ranslice::sim {

/// One car's subscription to a service, served by one slice.
struct Flow {
  CarId car = 0;
  ServiceId service = 0;
  SliceId slice = 0;
};

struct FlowOutcome {
  CarId car = 0;
  OruId oru = 0;
  bool covered = false;
  int rbs = 0;
  double rate_bps = 0.0;
  double delay_s = 0.0;
  int fulfilled = 0;
};

struct SliceTick {
  SliceId slice = 0;
  VoduId vodu = 0;
  loops::LoopAction action = loops::LoopAction::Keep;
  RbCount budget = 0;
  RbCount request = 0;
  RbCount granted = 0;
  RbCount excess = 0;
  RbCount used = 0;
  double phi = 0.0;
  bool no_demand = true;
  double occupancy = 0.0;
  double psi = 0.0;
  double omega = 1.0;
  double nu = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  int cars_served = 0;
  int max_cars_per_rb = 0;
  int orthogonality_violations = 0;
  bool fronthaul_overload = false;
  std::vector<radio::RBAssignment> assignments;
  std::vector<double> rates;
  std::vector<FlowOutcome> flows;
};

struct VoduTick {
  VoduId vodu = 0;
  bool requests_fit = true;  // sum of loop-1 requests <= capacity
  double r2 = 0.0;           // mean loop-2 reward of its slices
  double r1 = 0.0;           // mean loop-1 reward of its slices
  double main = 0.0;
  std::vector<SliceTick> slices;
};

/// The simulated network: auction outcome, slices on vO-DUs, cars, O-RUs and the
/// per-slice radio/traffic state. Holds no learning state.
///
/// run_vodu() touches only the slices of the given vO-DU and reads cars and
/// budgets, so different vO-DUs may run concurrently between advance() and
/// apply_loop2() calls.
class World {
 public:
  World(const ScenarioConfig& config, std::uint64_t seed);

  [[nodiscard]] const ScenarioConfig& config() const { return config_; }
  [[nodiscard]] const auction::AuctionInstance& auction_instance() const { return instance_; }
  [[nodiscard]] const auction::AuctionOutcome& auction_outcome() const { return outcome_; }
  [[nodiscard]] const slicing::Placement& placement() const { return placement_; }
  [[nodiscard]] const slicing::SliceRegistry& registry() const { return registry_; }
  [[nodiscard]] const std::vector<slicing::Slice>& all_slices() const { return all_slices_; }
  [[nodiscard]] const std::vector<mobility::Car>& cars() const { return cars_; }
  [[nodiscard]] const std::vector<mobility::ORU>& orus() const { return config_.orus; }
  [[nodiscard]] const std::vector<Flow>& flows() const { return flows_; }
  [[nodiscard]] int dropped_flows() const { return dropped_flows_; }
  [[nodiscard]] std::size_t vodu_count() const { return registry_.vodu_count(); }
  [[nodiscard]] double time() const { return time_; }

  [[nodiscard]] loops::Loop1State loop1_state(SliceId slice) const;
  [[nodiscard]] loops::Loop2State loop2_state(SliceId slice) const;
  [[nodiscard]] double last_nu(SliceId slice) const;
  /// Mean nu over the ticks since the slice's last loop-2 update.
  [[nodiscard]] double window_nu(SliceId slice) const;

  /// One loop-1 tick of vO-DU `d` with one action per slice (in slices_on order).
  [[nodiscard]] VoduTick run_vodu(VoduId d, std::span<const loops::LoopAction> actions);

  /// Fills loop-2 and main rewards of a finished vO-DU tick from the current budgets.
  void score(VoduTick& tick) const;

  /// Loop-2 budget change for one slice from its window nu, applied to the
  /// registry. Starts a new nu window.
  loops::BudgetProposal apply_loop2(SliceId slice, loops::LoopAction action);

  /// Moves cars forward by one tick.
  void advance();

 private:
  struct SliceRuntime {
    std::vector<std::size_t> flows;  // indices into flows_
    loops::Loop1State state;
    double nu = 0.0;
    double nu_sum = 0.0;
    int nu_ticks = 0;
    radio::ChannelSampler channel;
    Rng traffic;
  };

  [[nodiscard]] std::optional<OruId> serving_oru(const mobility::Car& car, double budget_s) const;
  [[nodiscard]] SliceRuntime& runtime(SliceId slice);
  [[nodiscard]] const SliceRuntime& runtime(SliceId slice) const;

  ScenarioConfig config_;
  std::uint64_t seed_;
  auction::AuctionInstance instance_;
  auction::AuctionOutcome outcome_;
  std::vector<slicing::Slice> all_slices_;
  slicing::Placement placement_;
  slicing::SliceRegistry registry_;
  std::vector<RbCount> vodu_offsets_;  // first global subband of each vO-DU
  std::vector<mobility::Car> cars_;
  std::vector<Flow> flows_;
  int dropped_flows_ = 0;
  std::vector<SliceRuntime> runtimes_;  // indexed like registry_.slices()
  std::vector<std::size_t> runtime_index_;
  radio::Numerology numerology_;
  mobility::MobilityModel mobility_;
  std::optional<mobility::Trace> trace_;
  double time_ = 0.0;
};

/// Bids of the configured tenants drawn from the auction stream of `seed`.
[[nodiscard]] auction::AuctionInstance draw_auction(const ScenarioConfig& config, std::uint64_t seed);

}  // namespace ranslice::sim
