#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ranslice/loops.hpp"
#include "ranslice/mobility.hpp"
#include "ranslice/radio.hpp"
#include "ranslice/rl/optimizer.hpp"
#include "ranslice/slicing.hpp"
#include "ranslice/types.hpp"

namespace ranslice::sim {

inline constexpr int kSchemaVersion = 1;

/// Validation or parse failure. `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0);
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

struct RunSection {
  std::uint64_t seed = 1;
  std::uint64_t steps = 10'000;
  double tick_s = 0.01;
  int loop2_period = loops::kLoop2Period;
  int actors = 1;
  bool deterministic = true;
  int actor_sync_period = 10;  // ticks between parameter refreshes of the actors
  bool write_assignments = false;
};

struct FleetSection {
  int flying = 3;
  int ground = 9;
  double flying_speed_min = 20.0;
  double flying_speed_max = 60.0;
  double flying_height_min = 100.0;
  double flying_height_max = 300.0;
  double ground_speed_min = 5.0;
  double ground_speed_max = 20.0;
  double heading_sigma = 0.3;  // rad / sqrt(s)
  int services_per_car_min = 1;
  int services_per_car_max = 2;
  std::string trace_file;
};

struct AreaSection {
  double width = 1200.0;
  double height = 800.0;
};

struct AuctionSection {
  int tenants = 10;
  RbCount total_rbs = 273;
  double reserve_price = 15.0;
  RbCount quantity_min = 6;
  RbCount quantity_max = 40;
  double price_min = 10.0;
  double price_max = 20.0;
  int vodus = 3;
};

struct ChannelSection {
  int numerology = 1;
  radio::ChannelParams params;
  double propagation_speed = 2e8;
};

struct RewardSection {
  loops::Penalties penalties;
  loops::RewardMode mode = loops::RewardMode::Hinge;
  double phi_dis = 0.0018;
  int max_rbs_per_flow = loops::kMaxRbsPerFlow;
};

struct RlSection {
  std::vector<int> layers{3, 64, 64, 4};
  double learning_rate = 1e-4;
  double gamma = 0.99;
  std::size_t replay_capacity = 50'000;
  double priority_exponent = 0.6;
  std::size_t batch_size = 32;
  std::uint64_t target_sync = 250;
  std::size_t learning_starts = 256;
  int updates_per_tick = 4;  // learner steps per loop-1 tick
  int n_step = 3;
  double epsilon_start = 1.0;
  double epsilon_end = 0.02;
  double epsilon_fraction = 0.2;
  double actor_epsilon_base = 0.9;
  rl::OptimizerKind optimizer = rl::OptimizerKind::Adam;
  bool shared_network = false;
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  RunSection run;
  FleetSection fleet;
  AreaSection area;
  std::vector<mobility::ORU> orus;
  mobility::DwellRule dwell_rule = mobility::DwellRule::Residence;
  AuctionSection auction;
  std::vector<slicing::Service> services;
  double buffer_capacity = slicing::kBufferCapacity;
  double buffer_threshold = slicing::kBufferThreshold;
  ChannelSection channel;
  RewardSection rewards;
  RlSection rl;
};

/// Six O-RUs on a 3 x 2 grid over the default area.
[[nodiscard]] std::vector<mobility::ORU> default_orus();
/// Desk-scale defaults: 12 cars, 10k steps.
[[nodiscard]] ScenarioConfig default_config();
/// Full-scale profile: 35 ground cars, 100k steps.
[[nodiscard]] ScenarioConfig full_profile(ScenarioConfig base);

/// Throws ConfigError describing the first problem found.
void validate(const ScenarioConfig& config);

/// Parses YAML over the defaults; unknown keys and bad values raise ConfigError
/// with the offending line.
[[nodiscard]] ScenarioConfig parse_config(std::string_view yaml_text);
[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path& path);
/// Full config as YAML, round-trippable through parse_config.
[[nodiscard]] std::string config_to_yaml(const ScenarioConfig& config);

}  // namespace ranslice::sim
