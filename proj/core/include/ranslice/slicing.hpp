#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ranslice/types.hpp"

namespace ranslice::slicing {

struct Service {
  ServiceId id = 0;
  std::string name;
  double delay_budget_s = 0.1;
  double packet_min_bytes = 1e3;
  double packet_max_bytes = 1e3;
  double arrival_rate = 1.0;  // packets/s per subscribed car

  [[nodiscard]] double mean_packet_bytes() const { return 0.5 * (packet_min_bytes + packet_max_bytes); }
};

/// Seven services with 5QI-style delay budgets from 5 ms to 300 ms.
[[nodiscard]] std::vector<Service> default_catalog();

/// Throws std::invalid_argument on a non-positive budget, an empty or inverted packet
/// range, a packet range outside [1 kB, 10 MB] or a negative arrival rate.
void validate(const Service& service);

inline constexpr double kBufferCapacity = 200.0;
inline constexpr double kBufferThreshold = 150.0;

struct Slice {
  SliceId id = 0;
  ServiceId service_id = 0;
  TenantId tenant_id = 0;
  RbCount rb_budget = 0;
  std::optional<VoduId> vodu;
  double buffer_capacity = kBufferCapacity;
  double buffer_threshold = kBufferThreshold;
};

struct VODU {
  VoduId id = 0;
  RbCount capacity = 0;
  std::vector<SliceId> slices;
};

/// floor(B/D) for each vO-DU. Throws std::invalid_argument for D < 1 or B < 0.
[[nodiscard]] std::vector<RbCount> initial_split(RbCount total_rbs, int vodu_count);
/// RBs left with the provider after the equal split.
[[nodiscard]] RbCount split_residual(RbCount total_rbs, int vodu_count);

struct Placement {
  /// y: the vO-DU holding each placed slice.
  std::map<SliceId, VoduId> vodu_of;
  std::vector<VODU> vodus;
  std::vector<SliceId> unplaced;
};

/// Cyclic placement starting at vO-DU 0. Each slice goes to the next vO-DU in the
/// cycle that still has room for its full budget; the cursor then moves past that
/// vO-DU. Slices no vO-DU can hold are reported in `unplaced`.
[[nodiscard]] Placement round_robin_place(std::span<const Slice> slices, std::span<const RbCount> capacities);

/// Sum of budgets over capacity; 0 for an empty or zero-capacity vO-DU.
[[nodiscard]] double rb_usage(std::span<const RbCount> budgets, RbCount capacity);

struct BudgetChange {
  RbCount proposed = 0;
  RbCount applied = 0;
  bool clipped = false;
};

/// Per-vO-DU RB accounts for placed slices. The free counter of each vO-DU is kept
/// explicitly and moved with every budget change so conservation can be audited.
class SliceRegistry {
 public:
  SliceRegistry(std::vector<Slice> slices, const Placement& placement);

  [[nodiscard]] std::size_t vodu_count() const { return vodus_.size(); }
  [[nodiscard]] const std::vector<Slice>& slices() const { return slices_; }
  [[nodiscard]] const Slice& slice(SliceId id) const;
  [[nodiscard]] const VODU& vodu(VoduId id) const { return vodus_.at(id); }
  [[nodiscard]] const std::vector<SliceId>& slices_on(VoduId id) const { return vodus_.at(id).slices; }

  [[nodiscard]] RbCount budget(SliceId id) const { return slice(id).rb_budget; }
  [[nodiscard]] RbCount capacity(VoduId id) const { return vodus_.at(id).capacity; }
  [[nodiscard]] RbCount free(VoduId id) const { return free_.at(id); }
  [[nodiscard]] RbCount allocated(VoduId id) const;
  [[nodiscard]] double usage(VoduId id) const;

  /// Moves `delta` RBs between the slice and its vO-DU pool, clipped to
  /// [-budget, free]. `clipped` is set when the request had to be reduced.
  BudgetChange apply_delta(SliceId id, RbCount delta);

  /// Sum of free + sum of budgets equals sum of capacities, every free counter
  /// matches capacity minus its budgets and no account is negative.
  [[nodiscard]] bool conservation_ok() const;

  /// Number of placed slices whose placement row does not hold exactly one vO-DU.
  [[nodiscard]] int placement_violations() const;
  /// Number of vO-DU rows listing each slice; 1 for a well-formed placement.
  [[nodiscard]] int placement_count(SliceId id) const;

 private:
  std::size_t index_of(SliceId id) const;

  std::vector<Slice> slices_;
  std::map<SliceId, std::size_t> index_;
  std::vector<VODU> vodus_;
  std::vector<RbCount> free_;
};

}  // namespace ranslice::slicing
