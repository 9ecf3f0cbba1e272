#include "ranslice/rl/replay_memory.hpp"

#include <cmath>
#include <stdexcept>

namespace ranslice::rl {

SumTree::SumTree(std::size_t leaves)
{
  if (leaves == 0) {
    throw std::invalid_argument("SumTree: need at least one leaf");
  }
  while (base_ < leaves) {
    base_ <<= 1U;
  }
  nodes_.assign(2 * base_, 0.0);
}

void SumTree::set(std::size_t leaf, double value)
{
  std::size_t i = base_ + leaf;
  nodes_[i] = value;
  for (i >>= 1U; i >= 1; i >>= 1U) {
    nodes_[i] = nodes_[2 * i] + nodes_[2 * i + 1];
  }
}

std::size_t SumTree::find(double mass) const
{
  std::size_t i = 1;
  while (i < base_) {
    const double left = nodes_[2 * i];
    if (mass < left || nodes_[2 * i + 1] <= 0.0) {
      i = 2 * i;
    } else {
      mass -= left;
      i = 2 * i + 1;
    }
  }
  return i - base_;
}

ReplayMemory::ReplayMemory(std::size_t capacity, double omega)
    : capacity_(capacity), omega_(omega), slots_(capacity), raw_priority_(capacity, 0.0), tree_(capacity)
{
  if (capacity == 0) {
    throw std::invalid_argument("ReplayMemory: capacity must be positive");
  }
  if (omega < 0.0) {
    throw std::invalid_argument("ReplayMemory: omega must be non-negative");
  }
}

SampleId ReplayMemory::add(Experience experience)
{
  std::lock_guard lock(mutex_);
  const SampleId id = next_id_++;
  const std::size_t slot = id % capacity_;
  double p = experience.priority > 0.0 ? experience.priority : max_priority_;
  experience.priority = p;
  max_priority_ = std::max(max_priority_, p);
  slots_[slot] = std::move(experience);
  raw_priority_[slot] = p;
  tree_.set(slot, std::pow(p, omega_));
  size_ = std::min(size_ + 1, capacity_);
  return id;
}

SampledBatch ReplayMemory::sample(std::size_t batch, Rng& rng) const
{
  std::lock_guard lock(mutex_);
  if (size_ == 0) {
    throw std::logic_error("ReplayMemory::sample: memory is empty");
  }
  SampledBatch out;
  out.ids.reserve(batch);
  out.items.reserve(batch);
  const double total = tree_.total();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const SampleId oldest = next_id_ - size_;
  for (std::size_t k = 0; k < batch; ++k) {
    std::size_t slot = tree_.find(unit(rng) * total);
    if (slot >= capacity_ || tree_.get(slot) <= 0.0) {
      slot = (next_id_ - 1) % capacity_;  // rounding at the right edge
    }
    // Map the slot back to the id currently living there.
    const SampleId base = oldest - oldest % capacity_;
    SampleId id = base + slot;
    if (id < oldest) {
      id += capacity_;
    }
    out.ids.push_back(id);
    out.items.push_back(slots_[slot]);
  }
  return out;
}

std::size_t ReplayMemory::update_priorities(std::span<const SampleId> ids, std::span<const double> priorities)
{
  if (ids.size() != priorities.size()) {
    throw std::invalid_argument("ReplayMemory::update_priorities: size mismatch");
  }
  std::lock_guard lock(mutex_);
  std::size_t updated = 0;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!resident(ids[k])) {
      continue;
    }
    const double p = priorities[k];
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("ReplayMemory::update_priorities: priorities must be positive and finite");
    }
    const std::size_t slot = ids[k] % capacity_;
    raw_priority_[slot] = p;
    slots_[slot].priority = p;
    tree_.set(slot, std::pow(p, omega_));
    max_priority_ = std::max(max_priority_, p);
    ++updated;
  }
  return updated;
}

std::size_t ReplayMemory::size() const
{
  std::lock_guard lock(mutex_);
  return size_;
}

double ReplayMemory::total_priority() const
{
  std::lock_guard lock(mutex_);
  return tree_.total();
}

std::optional<double> ReplayMemory::priority(SampleId id) const
{
  std::lock_guard lock(mutex_);
  if (!resident(id)) {
    return std::nullopt;
  }
  return raw_priority_[id % capacity_];
}

double ReplayMemory::recomputed_total() const
{
  std::lock_guard lock(mutex_);
  double total = 0.0;
  for (SampleId id = next_id_ - size_; id < next_id_; ++id) {
    total += std::pow(raw_priority_[id % capacity_], omega_);
  }
  return total;
}

SampleId ReplayMemory::next_id() const
{
  std::lock_guard lock(mutex_);
  return next_id_;
}

}  // namespace ranslice::rl
