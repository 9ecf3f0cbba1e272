#include "ranslice/slicing.hpp"

#include <algorithm>
#include <stdexcept>

namespace ranslice::slicing {

std::vector<Service> default_catalog()
{
  // Sized so a typical flow needs a few RBs within its budget, queueing included.
  return {
      {0, "remote-driving", 0.005, 1e3, 2e3, 200.0},
      {1, "advanced-driving", 0.010, 1e3, 4e3, 100.0},
      {2, "cooperative-sensing", 0.020, 2e3, 16e3, 20.0},
      {3, "remote-diagnosis", 0.050, 4e3, 32e3, 10.0},
      {4, "hd-maps", 0.100, 8e3, 64e3, 4.0},
      {5, "infotainment", 0.150, 16e3, 128e3, 2.0},
      {6, "video", 0.300, 32e3, 256e3, 2.0},
  };
}

void validate(const Service& service)
{
  const std::string who = "service " + std::to_string(service.id);
  if (!(service.delay_budget_s > 0.0)) {
    throw std::invalid_argument(who + ": delay budget must be positive");
  }
  if (!(service.packet_min_bytes >= 1e3 && service.packet_max_bytes <= 10e6)) {
    throw std::invalid_argument(who + ": packet sizes must lie in [1 kB, 10 MB]");
  }
  if (service.packet_min_bytes > service.packet_max_bytes) {
    throw std::invalid_argument(who + ": packet size range is inverted");
  }
  if (!(service.arrival_rate >= 0.0)) {
    throw std::invalid_argument(who + ": arrival rate must be non-negative");
  }
}

std::vector<RbCount> initial_split(RbCount total_rbs, int vodu_count)
{
  if (vodu_count < 1) {
    throw std::invalid_argument("initial_split: need at least one vO-DU");
  }
  if (total_rbs < 0) {
    throw std::invalid_argument("initial_split: total RBs must be non-negative");
  }
  return std::vector<RbCount>(static_cast<std::size_t>(vodu_count), total_rbs / vodu_count);
}

RbCount split_residual(RbCount total_rbs, int vodu_count)
{
  const auto caps = initial_split(total_rbs, vodu_count);
  return total_rbs - caps.front() * vodu_count;
}

Placement round_robin_place(std::span<const Slice> slices, std::span<const RbCount> capacities)
{
  Placement placement;
  const std::size_t d_count = capacities.size();
  std::vector<RbCount> remaining(capacities.begin(), capacities.end());
  for (std::size_t d = 0; d < d_count; ++d) {
    placement.vodus.push_back({static_cast<VoduId>(d), capacities[d], {}});
  }

  std::size_t cursor = 0;
  for (const auto& slice : slices) {
    bool placed = false;
    for (std::size_t step = 0; step < d_count; ++step) {
      const std::size_t d = (cursor + step) % d_count;
      if (slice.rb_budget <= remaining[d]) {
        remaining[d] -= slice.rb_budget;
        placement.vodu_of[slice.id] = static_cast<VoduId>(d);
        placement.vodus[d].slices.push_back(slice.id);
        cursor = (d + 1) % d_count;
        placed = true;
        break;
      }
    }
    if (!placed) {
      placement.unplaced.push_back(slice.id);
    }
  }
  return placement;
}

double rb_usage(std::span<const RbCount> budgets, RbCount capacity)
{
  if (capacity <= 0) {
    return 0.0;
  }
  RbCount total = 0;
  for (const auto b : budgets) {
    total += b;
  }
  return static_cast<double>(total) / static_cast<double>(capacity);
}

SliceRegistry::SliceRegistry(std::vector<Slice> slices, const Placement& placement) : vodus_(placement.vodus)
{
  for (auto& vodu : vodus_) {
    vodu.slices.clear();
  }
  for (auto& slice : slices) {
    const auto it = placement.vodu_of.find(slice.id);
    if (it == placement.vodu_of.end()) {
      continue;
    }
    if (it->second >= vodus_.size()) {
      throw std::invalid_argument("slice registry: slice placed on an unknown vO-DU");
    }
    if (!(slice.buffer_threshold < slice.buffer_capacity)) {
      throw std::invalid_argument("slice registry: buffer threshold must be below capacity");
    }
    slice.vodu = it->second;
    vodus_[it->second].slices.push_back(slice.id);
    index_[slice.id] = slices_.size();
    slices_.push_back(slice);
  }
  for (const auto& vodu : vodus_) {
    RbCount used = 0;
    for (const auto id : vodu.slices) {
      used += slices_[index_.at(id)].rb_budget;
    }
    if (used > vodu.capacity) {
      throw std::invalid_argument("slice registry: vO-DU " + std::to_string(vodu.id) + " is over capacity");
    }
    free_.push_back(vodu.capacity - used);
  }
}

std::size_t SliceRegistry::index_of(SliceId id) const
{
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw std::out_of_range("slice registry: unknown slice " + std::to_string(id));
  }
  return it->second;
}

const Slice& SliceRegistry::slice(SliceId id) const
{
  return slices_[index_of(id)];
}

RbCount SliceRegistry::allocated(VoduId id) const
{
  RbCount total = 0;
  for (const auto s : vodus_.at(id).slices) {
    total += slices_[index_of(s)].rb_budget;
  }
  return total;
}

double SliceRegistry::usage(VoduId id) const
{
  std::vector<RbCount> budgets;
  for (const auto s : vodus_.at(id).slices) {
    budgets.push_back(slices_[index_of(s)].rb_budget);
  }
  return rb_usage(budgets, vodus_.at(id).capacity);
}

BudgetChange SliceRegistry::apply_delta(SliceId id, RbCount delta)
{
  auto& s = slices_[index_of(id)];
  const VoduId d = *s.vodu;
  BudgetChange change;
  change.proposed = delta;
  change.applied = std::clamp(delta, -s.rb_budget, free_[d]);
  change.clipped = change.applied != delta;
  s.rb_budget += change.applied;
  free_[d] -= change.applied;
  return change;
}

bool SliceRegistry::conservation_ok() const
{
  RbCount total_capacity = 0;
  RbCount total_accounted = 0;
  for (std::size_t d = 0; d < vodus_.size(); ++d) {
    const RbCount used = allocated(static_cast<VoduId>(d));
    if (free_[d] < 0 || used < 0 || free_[d] != vodus_[d].capacity - used) {
      return false;
    }
    total_capacity += vodus_[d].capacity;
    total_accounted += free_[d] + used;
  }
  for (const auto& s : slices_) {
    if (s.rb_budget < 0) {
      return false;
    }
  }
  return total_capacity == total_accounted;
}

int SliceRegistry::placement_count(SliceId id) const
{
  int count = 0;
  for (const auto& vodu : vodus_) {
    count += static_cast<int>(std::count(vodu.slices.begin(), vodu.slices.end(), id));
  }
  return count;
}

int SliceRegistry::placement_violations() const
{
  int violations = 0;
  for (const auto& s : slices_) {
    if (placement_count(s.id) != 1) {
      ++violations;
    }
  }
  return violations;
}

}  // namespace ranslice::slicing
