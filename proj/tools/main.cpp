#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/cfg/env.h>
#include <spdlog/spdlog.h>

#include "ranslice/auction_io.hpp"
#include "ranslice/sim/compare.hpp"
#include "ranslice/sim/config.hpp"
#include "ranslice/sim/outputs.hpp"
#include "ranslice/sim/simulation.hpp"

namespace {

using namespace ranslice;

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> steps;
  bool deterministic = false;
  std::optional<int> actors;
  std::string out;
  std::string profile = "desk";
  bool literal_channel = false;
  bool literal_reward = false;
  bool literal_dwell = false;
};

void add_run_options(CLI::App* cmd, RunArgs& a)
{
  cmd->add_option("--config", a.config, "Scenario YAML; defaults apply when omitted")->check(CLI::ExistingFile);
  cmd->add_option("--seed", a.seed, "Run seed");
  cmd->add_option("--steps", a.steps, "Loop-1 ticks");
  cmd->add_flag("--deterministic", a.deterministic, "Single-threaded, reproducible execution");
  cmd->add_option("--actors", a.actors, "Actor threads; more than one runs actors concurrently")->check(
      CLI::PositiveNumber);
  cmd->add_option("--out", a.out, "Output directory");
  cmd->add_option("--profile", a.profile, "desk or full")->check(CLI::IsMember({"desk", "full"}));
  cmd->add_flag("--literal-channel", a.literal_channel, "Use the printed path-loss form");
  cmd->add_flag("--literal-reward", a.literal_reward, "Use the unhinged reward forms");
  cmd->add_flag("--literal-dwell", a.literal_dwell, "Use the printed dwell-time rule");
}

sim::ScenarioConfig scenario(const RunArgs& a)
{
  auto config = a.config.empty() ? sim::default_config() : sim::load_config(a.config);
  if (a.profile == "full") {
    config = sim::full_profile(config);
  }
  if (a.seed) {
    config.run.seed = *a.seed;
  }
  if (a.steps) {
    config.run.steps = *a.steps;
  }
  if (a.actors) {
    config.run.actors = *a.actors;
    config.run.deterministic = *a.actors <= 1;
  }
  if (a.deterministic) {
    config.run.deterministic = true;
  }
  if (a.literal_channel) {
    config.channel.params.mode = radio::PathLossMode::Literal;
  }
  if (a.literal_reward) {
    config.rewards.mode = loops::RewardMode::Literal;
  }
  if (a.literal_dwell) {
    config.dwell_rule = mobility::DwellRule::Literal;
  }
  sim::validate(config);
  return config;
}

void print_report(const sim::RunReport& r)
{
  fmt::print("seed {} steps {} policy {}\n", r.seed, r.steps, r.random_policy ? "random" : "dqn");
  fmt::print("auction: {} winners, {} RBs allocated, {} unallocated, revenue {:.2f}\n", r.auction_winners,
             r.allocated_rbs, r.unallocated_rbs, r.revenue);
  fmt::print("reward: first 10% {:.4f}, final 10% {:.4f}\n", r.first_window_reward, r.final_window_reward);
  fmt::print("final phi {:.4f}, usage {:.4f}, capacity ok {:.4f}\n", r.final_phi, r.final_usage,
             r.capacity_ok_fraction());
  fmt::print("orthogonality {}, placement {}, conservation failures {}/{}\n", r.orthogonality_violations,
             r.placement_violations, r.conservation_failures, r.conservation_checks);
  for (const auto& [name, count] : r.events) {
    fmt::print("  {:<22} {}\n", name, count);
  }
}

}  // namespace

int main(int argc, char** argv)
{
  spdlog::cfg::load_env_levels();
  CLI::App app{"RAN slicing simulator: RB auction, two control loops, distributed DQN"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Auction, placement and training run");
  add_run_options(run_cmd, run_args);

  RunArgs baseline_args;
  auto* baseline_cmd = app.add_subcommand("baseline", "Same environment under uniformly random actions");
  add_run_options(baseline_cmd, baseline_args);

  std::string auction_input;
  auto* auction_cmd = app.add_subcommand("auction", "One-shot VCG auction of a JSON instance");
  auction_cmd->add_option("--input", auction_input, "Instance JSON")->required()->check(CLI::ExistingFile);

  std::string compare_input;
  bool compare_json = false;
  auto* compare_cmd = app.add_subcommand("compare-auction", "Greedy VCG against the exhaustive optimum");
  compare_cmd->add_option("--input", compare_input, "Instance JSON")->required()->check(CLI::ExistingFile);
  compare_cmd->add_flag("--json", compare_json, "Print JSON instead of a table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd || *baseline_cmd) {
      const bool baseline = static_cast<bool>(*baseline_cmd);
      const auto& a = baseline ? baseline_args : run_args;
      const auto config = scenario(a);
      sim::RunOptions options;
      options.output_dir = a.out;
      const auto report = baseline ? sim::baseline_random(config, options) : sim::run(config, options);
      print_report(report);
      if (report.diverged) {
        spdlog::warn("training produced a non-finite loss; affected updates were skipped");
      }
    } else if (*auction_cmd) {
      const auto instance = auction::load_instance(auction_input);
      const auto outcome = auction::run_auction(instance.bids, instance.config);
      std::cout << auction::outcome_to_json(instance, outcome) << '\n';
    } else if (*compare_cmd) {
      const auto c = sim::compare_auction(auction::load_instance(compare_input));
      std::cout << (compare_json ? sim::comparison_to_json(c) + "\n" : sim::comparison_to_table(c));
    }
  } catch (const sim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return EXIT_SUCCESS;
}
