#include "ranslice/sim/outputs.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ranslice/auction_io.hpp"

namespace ranslice::sim {

namespace {

std::ofstream open(const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
  auto out = open(path);
  out << text;
}

// JSON has no NaN or infinity.
nlohmann::json number(double v)
{
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

RunSink::RunSink(const std::filesystem::path& dir, bool assignments)
{
  std::filesystem::create_directories(dir);
  metrics_ = open(dir / "metrics.csv");
  training_ = open(dir / "training.csv");
  events_ = open(dir / "events.log");
  metrics_ << "t,vodu,slice,action,loop2_action,nu,omega,psi,r1,r2,r_main,phi,usage,budget,granted\n";
  training_ << "step,mean_reward,loss,epsilon\n";
  if (assignments) {
    assignments_ = open(dir / "assignments.csv");
    assignments_ << "t,slice,tti,subband,car,oru,rate_bps\n";
  }
}

void RunSink::metrics(std::uint64_t t, const SliceTick& st, std::string_view loop2_action, double r_main,
                      double usage)
{
  metrics_ << fmt::format("{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{}\n", t, st.vodu,
                          st.slice, loops::to_string(st.action), loop2_action, st.nu, st.omega, st.psi, st.r1, st.r2,
                          r_main, st.phi, usage, st.budget, st.granted);
}

void RunSink::training(std::uint64_t step, double mean_reward, double loss, double epsilon)
{
  training_ << fmt::format("{},{:.6f},{:.8f},{:.6f}\n", step, mean_reward, loss, epsilon);
}

void RunSink::event(std::uint64_t t, std::string_view kind, VoduId vodu, std::optional<SliceId> slice, double value)
{
  nlohmann::json j{{"t", t}, {"event", kind}, {"vodu", vodu}, {"value", number(value)}};
  if (slice) {
    j["slice"] = *slice;
  }
  events_ << j.dump() << '\n';
}

void RunSink::assignments(std::uint64_t t, const SliceTick& st)
{
  if (!assignments_.is_open()) {
    return;
  }
  for (std::size_t i = 0; i < st.assignments.size(); ++i) {
    const auto& a = st.assignments[i];
    assignments_ << fmt::format("{},{},{},{},{},{},{:.3f}\n", t, a.slice_id, a.rb.tti, a.rb.subband, a.car_id, a.oru_id,
                                i < st.rates.size() ? st.rates[i] : 0.0);
  }
}

std::string placement_to_json(const World& world)
{
  const auto& registry = world.registry();
  nlohmann::json vodus = nlohmann::json::array();
  for (std::size_t d = 0; d < registry.vodu_count(); ++d) {
    const auto id = static_cast<VoduId>(d);
    nlohmann::json slices = nlohmann::json::array();
    for (const auto s : registry.slices_on(id)) {
      const auto& slice = registry.slice(s);
      slices.push_back({{"slice", s}, {"service", slice.service_id}, {"tenant", slice.tenant_id},
                        {"budget", slice.rb_budget}});
    }
    vodus.push_back({{"vodu", d}, {"capacity", registry.capacity(id)}, {"free", registry.free(id)},
                     {"usage", registry.usage(id)}, {"slices", slices}});
  }
  nlohmann::json unplaced = nlohmann::json::array();
  for (const auto s : world.placement().unplaced) {
    unplaced.push_back(s);
  }
  nlohmann::json j{{"vodus", vodus}, {"unplaced", unplaced}, {"dropped_flows", world.dropped_flows()}};
  return j.dump(2);
}

std::string summary_to_json(const RunReport& r)
{
  nlohmann::json slices = nlohmann::json::array();
  for (const auto& s : r.slices) {
    slices.push_back({{"slice", s.id},
                      {"vodu", s.vodu},
                      {"service", s.service},
                      {"tenant", s.tenant},
                      {"flows", s.flows},
                      {"initial_budget", s.initial_budget},
                      {"final_budget", s.final_budget},
                      {"has_demand", s.has_demand},
                      {"phi", {{"mean", number(s.phi_mean)},
                               {"min", number(s.phi_min)},
                               {"p10", number(s.phi_p10)},
                               {"median", number(s.phi_median)},
                               {"max", number(s.phi_max)}}}});
  }
  nlohmann::json events = nlohmann::json::object();
  for (const auto& [name, count] : r.events) {
    events[name] = count;
  }
  nlohmann::json j{
      {"schema_version", kMetricsSchemaVersion},
      {"seed", r.seed},
      {"steps", r.steps},
      {"policy", r.random_policy ? "random" : "dqn"},
      {"vodus", r.vodus},
      {"auction", {{"winners", r.auction_winners},
                   {"allocated_rbs", r.allocated_rbs},
                   {"unallocated_rbs", r.unallocated_rbs},
                   {"welfare", r.welfare},
                   {"revenue", r.revenue}}},
      {"unplaced_slices", r.unplaced_slices},
      {"dropped_flows", r.dropped_flows},
      {"reward", {{"first_window_mean", number(r.first_window_reward)},
                  {"final_window_mean", number(r.final_window_reward)}}},
      {"final_phi_mean", number(r.final_phi)},
      {"final_usage_mean", number(r.final_usage)},
      {"checks", {{"capacity_checks", r.capacity_checks},
                  {"capacity_ok", r.capacity_ok},
                  {"capacity_ok_fraction", r.capacity_ok_fraction()},
                  {"orthogonality_violations", r.orthogonality_violations},
                  {"placement_violations", r.placement_violations},
                  {"conservation_checks", r.conservation_checks},
                  {"conservation_failures", r.conservation_failures},
                  {"loop2_steps", r.loop2_steps}}},
      {"events", events},
      {"slices", slices},
      {"train_steps", r.train_steps},
      {"diverged", r.diverged},
  };
  return j.dump(2);
}

void write_setup(const std::filesystem::path& dir, const World& world)
{
  std::filesystem::create_directories(dir);
  write_text(dir / "config.yaml", config_to_yaml(world.config()));
  write_text(dir / "auction.json", auction::outcome_to_json(world.auction_instance(), world.auction_outcome()));
  write_text(dir / "placement.json", placement_to_json(world));
}

void write_summary(const std::filesystem::path& dir, const RunReport& report)
{
  std::filesystem::create_directories(dir);
  write_text(dir / "summary.json", summary_to_json(report));
}

}  // namespace ranslice::sim
