#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ranslice/rl/qnetwork.hpp"
#include "ranslice/rng.hpp"

namespace ranslice::rl {

inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON checkpoint of one learner: {version, layer_sizes, online, target,
/// train_steps, rng}. Doubles are written with round-trip precision.
struct Checkpoint {
  std::string name = "shared";
  QNetwork online;
  QNetwork target;
  std::uint64_t train_steps = 0;
  std::string rng_state;
};

[[nodiscard]] std::string rng_state(const Rng& rng);
void restore_rng(Rng& rng, std::string_view state);

[[nodiscard]] std::string checkpoints_to_json(const std::vector<Checkpoint>& checkpoints);
[[nodiscard]] std::vector<Checkpoint> checkpoints_from_json(std::string_view text);

void save_checkpoints(const std::filesystem::path& path, const std::vector<Checkpoint>& checkpoints);
[[nodiscard]] std::vector<Checkpoint> load_checkpoints(const std::filesystem::path& path);

}  // namespace ranslice::rl
