#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ranslice/rl/checkpoint.hpp"
#include "ranslice/sim/simulation.hpp"
#include "ranslice/sim/world.hpp"

namespace ranslice::sim {

inline constexpr int kMetricsSchemaVersion = 1;

/// Append-only writers for the per-tick artefacts of one run. Every file is
/// flushed on destruction.
class RunSink {
 public:
  RunSink(const std::filesystem::path& dir, bool assignments);

  void metrics(std::uint64_t t, const SliceTick& st, std::string_view loop2_action, double r_main, double usage);
  void training(std::uint64_t step, double mean_reward, double loss, double epsilon);
  void event(std::uint64_t t, std::string_view kind, VoduId vodu, std::optional<SliceId> slice, double value);
  void assignments(std::uint64_t t, const SliceTick& st);

 private:
  std::ofstream metrics_;
  std::ofstream training_;
  std::ofstream events_;
  std::ofstream assignments_;
};

[[nodiscard]] std::string placement_to_json(const World& world);
[[nodiscard]] std::string summary_to_json(const RunReport& report);

/// config.yaml, auction.json and placement.json of a freshly built world.
void write_setup(const std::filesystem::path& dir, const World& world);
void write_summary(const std::filesystem::path& dir, const RunReport& report);

}  // namespace ranslice::sim
