#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "ranslice/rng.hpp"

namespace ranslice::rl {

struct Experience {
  std::vector<double> state;
  int action = 0;
  double reward = 0.0;               // n-step discounted reward
  std::vector<double> next_state;    // bootstrap state s_{t+n}
  double discount = 0.0;             // gamma^n, 0 for a terminal transition
  double priority = 0.0;             // <= 0 means "use the current maximum"
  int source = 0;                    // producing actor
};

using SampleId = std::uint64_t;

struct SampledBatch {
  std::vector<SampleId> ids;
  std::vector<Experience> items;
};

/// Array-backed binary sum tree over a fixed number of leaves.
class SumTree {
 public:
  explicit SumTree(std::size_t leaves);

  void set(std::size_t leaf, double value);
  [[nodiscard]] double get(std::size_t leaf) const { return nodes_[base_ + leaf]; }
  [[nodiscard]] double total() const { return nodes_[1]; }
  /// Leaf whose cumulative range contains `mass`, for mass in [0, total).
  [[nodiscard]] std::size_t find(double mass) const;

 private:
  std::size_t base_ = 1;
  std::vector<double> nodes_;
};

/// Bounded prioritized replay. Entries are evicted oldest first; sampling picks
/// entry i with probability p_i^omega / sum_j p_j^omega. Ids increase
/// monotonically so priority updates for evicted entries are recognised and dropped.
/// All members are safe to call concurrently.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity = 50'000, double omega = 0.6);

  SampleId add(Experience experience);

  /// `batch` draws with replacement. Throws std::logic_error when empty.
  [[nodiscard]] SampledBatch sample(std::size_t batch, Rng& rng) const;

  /// Sets raw priorities (before the omega exponent) of still-resident ids.
  /// Returns how many ids were updated.
  std::size_t update_priorities(std::span<const SampleId> ids, std::span<const double> priorities);

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] double omega() const { return omega_; }
  /// Sum of p^omega over resident entries (the sum-tree root).
  [[nodiscard]] double total_priority() const;
  /// Raw priority of a resident id.
  [[nodiscard]] std::optional<double> priority(SampleId id) const;
  /// Recomputes the sum of resident p^omega directly from the stored priorities.
  [[nodiscard]] double recomputed_total() const;
  [[nodiscard]] SampleId next_id() const;

 private:
  [[nodiscard]] bool resident(SampleId id) const { return id < next_id_ && id + size_ >= next_id_; }

  std::size_t capacity_;
  double omega_;
  mutable std::mutex mutex_;
  std::vector<Experience> slots_;
  std::vector<double> raw_priority_;
  SumTree tree_;
  SampleId next_id_ = 0;
  std::size_t size_ = 0;
  double max_priority_ = 1.0;
};

}  // namespace ranslice::rl
