#include "ranslice/sim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <thread>

#include <spdlog/spdlog.h>

#include "ranslice/rl/checkpoint.hpp"
#include "ranslice/rl/dqn.hpp"
#include "ranslice/rl/learner.hpp"
#include "ranslice/rl/policy.hpp"
#include "ranslice/rl/replay_memory.hpp"
#include "ranslice/sim/outputs.hpp"
#include "ranslice/sim/world.hpp"

namespace ranslice::sim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

rl::LearnerConfig learner_config(const ScenarioConfig& c)
{
  rl::LearnerConfig lc;
  lc.batch_size = c.rl.batch_size;
  lc.target_sync_period = c.rl.target_sync;
  lc.learning_starts = c.rl.learning_starts;
  lc.optimizer.kind = c.rl.optimizer;
  lc.optimizer.learning_rate = c.rl.learning_rate;
  return lc;
}

/// Replay memory, learner and parameter server of one Q-network.
struct Agent {
  Agent(const ScenarioConfig& c, const rl::QNetwork& initial, Rng sampling)
      : memory(c.rl.replay_capacity, c.rl.priority_exponent),
        server(initial),
        learner(initial, learner_config(c), memory, server, std::move(sampling)),
        snapshot(server.snapshot())
  {
  }

  rl::ReplayMemory memory;
  rl::ParameterServer server;
  rl::Learner learner;
  std::shared_ptr<const rl::QNetwork> snapshot;
};

/// Loop-1 actor driving the slices of one vO-DU.
struct Actor {
  int index = 0;
  Rng rng;
  std::map<SliceId, rl::NStepAccumulator> pending;
  VoduTick tick;
};

/// Loop-2 transition waiting for the end of its decision window.
struct Loop2Pending {
  bool active = false;
  std::array<double, 3> state{};
  int action = 0;
  RbCount overrun = 0;
  double reward_sum = 0.0;
  int ticks = 0;
};

double mean_of(const std::vector<double>& v, std::size_t begin, std::size_t end)
{
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = begin; i < end; ++i) {
    if (!std::isnan(v[i])) {
      sum += v[i];
      ++n;
    }
  }
  return n == 0 ? kNaN : sum / static_cast<double>(n);
}

double quantile(std::vector<double> sorted, double q)
{
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Runs `work(i)` for i in [0, n) over `workers` threads while the calling
/// thread executes `alongside`. Rethrows the first worker exception.
void run_parallel(std::size_t n, int workers, const std::function<void(std::size_t)>& work,
                  const std::function<void()>& alongside)
{
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = static_cast<std::size_t>(w); i < n; i += static_cast<std::size_t>(workers)) {
            work(i);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    alongside();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

class Engine {
 public:
  Engine(const ScenarioConfig& config, const RunOptions& options)
      : config_(config), options_(options), world_(config, config.run.seed)
  {
    random_ = options.random_policy;
    report_.seed = config.run.seed;
    report_.steps = config.run.steps;
    report_.random_policy = random_;
    report_.vodus = world_.vodu_count();
    for (const char* name : {events::kLoop1CapacityClamp, events::kCouplingExcess, events::kFronthaulOverload,
                             events::kOrthogonality, events::kDuplicatePlacement, events::kBudgetOverflow,
                             events::kScalingOverrun}) {
      report_.events[name] = 0;
    }

    const auto seed = config.run.seed;
    for (std::size_t d = 0; d < world_.vodu_count(); ++d) {
      Actor a;
      a.index = static_cast<int>(d) + 1;
      a.rng = make_stream(seed, streams::kActorPolicyBase + d + 1);
      for (const auto s : world_.registry().slices_on(static_cast<VoduId>(d))) {
        a.pending.emplace(s, rl::NStepAccumulator(config.rl.n_step, config.rl.gamma));
      }
      actors_.push_back(std::move(a));
    }
    loop2_rng_ = make_stream(seed, streams::kLoop2Policy);
    // gamma is per tick; one loop-2 transition spans a whole period.
    const double loop2_gamma = std::pow(config.rl.gamma, std::max(config.run.loop2_period, 1));
    for (const auto& s : world_.registry().slices()) {
      loop2_pending_.emplace(s.id, Loop2Pending{});
      loop2_acc_.emplace(s.id, rl::NStepAccumulator(config.rl.n_step, loop2_gamma));
      initial_budget_[s.id] = s.rb_budget;
    }

    if (!random_) {
      auto init = make_stream(seed, streams::kNetworkInit);
      const rl::QNetwork first(config.rl.layers, init);
      loop1_ = std::make_unique<Agent>(config, first, make_stream(seed, streams::kReplaySampling));
      if (config.rl.shared_network) {
        loop2_ = loop1_.get();
      } else {
        const rl::QNetwork second(config.rl.layers, init);
        loop2_owned_ = std::make_unique<Agent>(config, second, make_stream(seed, streams::kReplaySampling + 100));
        loop2_ = loop2_owned_.get();
      }
    }

    schedule_.start = config.rl.epsilon_start;
    schedule_.end = config.rl.epsilon_end;
    schedule_.fraction = config.rl.epsilon_fraction;
    schedule_.total_steps = std::max<std::uint64_t>(config.run.steps, 1);

    if (!options.output_dir.empty()) {
      write_setup(options.output_dir, world_);
      sink_.emplace(options.output_dir, config.run.write_assignments);
    }
  }

  RunReport run()
  {
    const auto& outcome = world_.auction_outcome();
    report_.auction_winners = outcome.winners.size();
    report_.allocated_rbs = outcome.allocated_rbs();
    report_.unallocated_rbs = outcome.unallocated_rbs;
    report_.welfare = outcome.welfare;
    report_.revenue = outcome.revenue();
    report_.unplaced_slices = world_.placement().unplaced.size();
    report_.dropped_flows = world_.dropped_flows();

    for (std::uint64_t t = 0; t < config_.run.steps; ++t) {
      tick(t);
    }
    finish();
    return report_;
  }

 private:
  void emit(std::uint64_t t, const char* kind, VoduId d, std::optional<SliceId> s, double value)
  {
    ++report_.events[kind];
    if (sink_) {
      sink_->event(t, kind, d, s, value);
    }
  }

  int random_action(Rng& rng)
  {
    return std::uniform_int_distribution<int>(0, loops::kActionCount - 1)(rng);
  }

  void act(std::size_t d, double epsilon)
  {
    auto& actor = actors_[d];
    const auto vodu = static_cast<VoduId>(d);
    const auto& ids = world_.registry().slices_on(vodu);
    std::vector<std::array<double, 3>> states;
    std::vector<int> chosen;
    std::vector<loops::LoopAction> actions;
    const double eps = rl::actor_epsilon(epsilon, actor.index, config_.rl.actor_epsilon_base);
    for (const auto s : ids) {
      states.push_back(world_.loop1_state(s).encode());
      const int a = random_ ? random_action(actor.rng) : rl::select_action(*loop1_->snapshot, states.back(), eps,
                                                                              actor.rng);
      chosen.push_back(a);
      actions.push_back(loops::action_from_index(a));
    }
    actor.tick = world_.run_vodu(vodu, actions);
    if (random_) {
      return;
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto next = world_.loop1_state(ids[i]).encode();
      auto exp = actor.pending.at(ids[i]).push({states[i].begin(), states[i].end()}, chosen[i],
                                               actor.tick.slices[i].r1, {next.begin(), next.end()}, actor.index);
      if (exp) {
        loop1_->memory.add(std::move(*exp));
      }
    }
  }

  void train(std::optional<double>& loss)
  {
    if (random_) {
      return;
    }
    double sum = 0.0;
    int n = 0;
    for (auto* agent : agents()) {
      for (int k = 0; k < config_.rl.updates_per_tick; ++k) {
        if (const auto result = agent->learner.step(); result && result->ok) {
          sum += result->loss;
          ++n;
        }
      }
    }
    if (n > 0) {
      loss = sum / n;
    }
  }

  std::vector<Agent*> agents()
  {
    std::vector<Agent*> out{loop1_.get()};
    if (loop2_ != loop1_.get()) {
      out.push_back(loop2_);
    }
    return out;
  }

  void tick(std::uint64_t t)
  {
    const double epsilon = schedule_.value(t);
    const std::size_t vodus = world_.vodu_count();
    std::optional<double> loss;

    // Loop 1 on every vO-DU, with the learner running alongside in concurrent mode.
    const int workers = std::min<int>(config_.run.actors, static_cast<int>(vodus));
    if (!config_.run.deterministic && workers > 1) {
      run_parallel(vodus, workers, [&](std::size_t d) { act(d, epsilon); }, [&] { train(loss); });
    } else {
      for (std::size_t d = 0; d < vodus; ++d) {
        act(d, epsilon);
      }
    }

    std::vector<double> usage(vodus, 0.0);
    double reward_sum = 0.0;
    int reward_count = 0;
    double phi_sum = 0.0;
    int phi_count = 0;
    for (std::size_t d = 0; d < vodus; ++d) {
      auto& tick = actors_[d].tick;
      world_.score(tick);
      const auto vodu = static_cast<VoduId>(d);
      usage[d] = world_.registry().usage(vodu);
      if (tick.slices.empty()) {
        continue;
      }
      reward_sum += tick.main;
      ++reward_count;
      const RbCount free = world_.registry().free(vodu);
      for (const auto& st : tick.slices) {
        if (!st.no_demand) {
          phi_sum += st.phi;
          ++phi_count;
        }
        report_.orthogonality_violations += static_cast<std::uint64_t>(st.orthogonality_violations);
        if (st.excess > 0) {
          emit(t, events::kLoop1CapacityClamp, vodu, st.slice, static_cast<double>(st.excess));
        }
        if (st.nu > static_cast<double>(free)) {
          emit(t, events::kCouplingExcess, vodu, st.slice, st.nu - static_cast<double>(free));
        }
        if (st.fronthaul_overload) {
          emit(t, events::kFronthaulOverload, vodu, st.slice, 1.0);
        }
        if (st.orthogonality_violations > 0) {
          emit(t, events::kOrthogonality, vodu, st.slice, st.orthogonality_violations);
        }
        if (world_.registry().placement_count(st.slice) != 1) {
          emit(t, events::kDuplicatePlacement, vodu, st.slice, world_.registry().placement_count(st.slice));
        }
        if (st.nu > static_cast<double>(free)) {
          emit(t, events::kBudgetOverflow, vodu, st.slice, st.nu - static_cast<double>(free));
        }
        auto& pending = loop2_pending_.at(st.slice);
        pending.reward_sum += tick.main;
        ++pending.ticks;
      }
    }
    const double step_reward = reward_count == 0 ? 0.0 : reward_sum / reward_count;
    report_.step_reward.push_back(step_reward);
    report_.step_phi.push_back(phi_count == 0 ? kNaN : phi_sum / phi_count);
    for (std::size_t d = 0; d < vodus; ++d) {
      for (const auto& st : actors_[d].tick.slices) {
        phi_history_[st.slice].push_back(st.no_demand ? kNaN : st.phi);
      }
    }

    // Loop 2 on its period.
    std::vector<bool> exceeded(vodus, false);
    std::map<SliceId, loops::LoopAction> loop2_actions;
    if (config_.run.loop2_period > 0 && t % static_cast<std::uint64_t>(config_.run.loop2_period) == 0) {
      run_loop2(t, epsilon, exceeded, loop2_actions);
    }

    for (std::size_t d = 0; d < vodus; ++d) {
      if (actors_[d].tick.slices.empty()) {
        continue;
      }
      ++report_.capacity_checks;
      if (actors_[d].tick.requests_fit && !exceeded[d]) {
        ++report_.capacity_ok;
      }
    }

    if (config_.run.deterministic || workers <= 1) {
      train(loss);
    }
    if (!random_ && config_.run.actor_sync_period > 0 &&
        (t + 1) % static_cast<std::uint64_t>(config_.run.actor_sync_period) == 0) {
      for (auto* agent : agents()) {
        agent->snapshot = agent->server.snapshot();
      }
    }

    if (sink_) {
      for (std::size_t d = 0; d < vodus; ++d) {
        const auto& tick = actors_[d].tick;
        for (const auto& st : tick.slices) {
          const auto it = loop2_actions.find(st.slice);
          sink_->metrics(t, st, it == loop2_actions.end() ? "-" : loops::to_string(it->second), tick.main, usage[d]);
          sink_->assignments(t, st);
        }
      }
      if (loss) {
        sink_->training(t, step_reward, *loss, epsilon);
      }
    }
    world_.advance();
  }

  void run_loop2(std::uint64_t t, double epsilon, std::vector<bool>& exceeded,
                 std::map<SliceId, loops::LoopAction>& actions)
  {
    ++report_.loop2_steps;
    const auto& p = config_.rewards.penalties;
    for (const auto& s : world_.registry().slices()) {
      const auto state = world_.loop2_state(s.id).encode();
      auto& pending = loop2_pending_.at(s.id);
      if (pending.active && !random_) {
        const double window = pending.ticks == 0 ? 0.0 : pending.reward_sum / pending.ticks;
        const double reward = window - p.capacity * static_cast<double>(pending.overrun);
        auto exp = loop2_acc_.at(s.id).push({pending.state.begin(), pending.state.end()}, pending.action, reward,
                                            {state.begin(), state.end()}, 0);
        if (exp) {
          loop2_->memory.add(std::move(*exp));
        }
      }
      const int a = random_ ? random_action(loop2_rng_)
                            : rl::select_action(*loop2_->snapshot, state, rl::actor_epsilon(epsilon, 0), loop2_rng_);
      const auto action = loops::action_from_index(a);
      const auto proposal = world_.apply_loop2(s.id, action);
      const VoduId d = *s.vodu;
      pending = Loop2Pending{true, state, a, 0, 0.0, 0};
      if (proposal.exceeded) {
        // Part of the proposal the free pool could not hold.
        const RbCount overrun = proposal.proposed - proposal.applied;
        pending.overrun = overrun;
        exceeded[d] = true;
        emit(t, events::kScalingOverrun, d, s.id, static_cast<double>(overrun));
      }
      actions[s.id] = action;
    }
    ++report_.conservation_checks;
    if (!world_.registry().conservation_ok()) {
      ++report_.conservation_failures;
    }
    report_.placement_violations += static_cast<std::uint64_t>(world_.registry().placement_violations());
  }

  void finish()
  {
    const auto n = report_.step_reward.size();
    const std::size_t window = std::max<std::size_t>(1, n / 10);
    if (n > 0) {
      report_.first_window_reward = mean_of(report_.step_reward, 0, std::min(window, n));
      report_.final_window_reward = mean_of(report_.step_reward, n - std::min(window, n), n);
    }

    double usage = 0.0;
    for (std::size_t d = 0; d < world_.vodu_count(); ++d) {
      usage += world_.registry().usage(static_cast<VoduId>(d));
    }
    report_.final_usage = world_.vodu_count() == 0 ? 0.0 : usage / static_cast<double>(world_.vodu_count());

    std::vector<int> flows(world_.all_slices().size(), 0);
    for (const auto& f : world_.flows()) {
      ++flows[f.slice];
    }
    double phi_sum = 0.0;
    int phi_count = 0;
    for (const auto& s : world_.registry().slices()) {
      SliceSummary sum;
      sum.id = s.id;
      sum.vodu = *s.vodu;
      sum.service = s.service_id;
      sum.tenant = s.tenant_id;
      sum.flows = flows[s.id];
      sum.initial_budget = initial_budget_.at(s.id);
      sum.final_budget = s.rb_budget;
      std::vector<double> tail;
      const auto& hist = phi_history_[s.id];
      for (std::size_t i = hist.size() - std::min(window, hist.size()); i < hist.size(); ++i) {
        if (!std::isnan(hist[i])) {
          tail.push_back(hist[i]);
        }
      }
      sum.has_demand = !tail.empty();
      if (sum.has_demand) {
        sum.phi_mean = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(tail.size());
        sum.phi_min = *std::min_element(tail.begin(), tail.end());
        sum.phi_max = *std::max_element(tail.begin(), tail.end());
        sum.phi_p10 = quantile(tail, 0.1);
        sum.phi_median = quantile(tail, 0.5);
        phi_sum += sum.phi_mean;
        ++phi_count;
      } else {
        sum.phi_mean = sum.phi_min = sum.phi_max = sum.phi_p10 = sum.phi_median = kNaN;
      }
      report_.slices.push_back(sum);
    }
    report_.final_phi = phi_count == 0 ? kNaN : phi_sum / phi_count;

    if (!random_) {
      for (auto* agent : agents()) {
        report_.train_steps += agent->learner.train_steps();
        report_.diverged = report_.diverged || agent->learner.diverged();
      }
    }

    if (!options_.output_dir.empty()) {
      write_summary(options_.output_dir, report_);
      if (!random_) {
        std::vector<rl::Checkpoint> checkpoints;
        const bool shared = loop2_ == loop1_.get();
        for (auto* agent : agents()) {
          rl::Checkpoint c;
          c.name = shared ? "shared" : (agent == loop1_.get() ? "loop1" : "loop2");
          c.online = agent->learner.online();
          c.target = agent->learner.target();
          c.train_steps = agent->learner.train_steps();
          c.rng_state = rl::rng_state(agent->learner.sampling_rng());
          checkpoints.push_back(std::move(c));
        }
        rl::save_checkpoints(options_.output_dir / "checkpoint.json", checkpoints);
      }
    }
    spdlog::info("run seed={} steps={} reward first={:.4f} final={:.4f} phi={:.3f} capacity_ok={:.3f}",
                 report_.seed, report_.steps, report_.first_window_reward, report_.final_window_reward,
                 report_.final_phi, report_.capacity_ok_fraction());
  }

  ScenarioConfig config_;
  RunOptions options_;
  World world_;
  bool random_ = false;
  RunReport report_;
  std::vector<Actor> actors_;
  Rng loop2_rng_;
  std::map<SliceId, Loop2Pending> loop2_pending_;
  std::map<SliceId, rl::NStepAccumulator> loop2_acc_;
  std::map<SliceId, RbCount> initial_budget_;
  std::map<SliceId, std::vector<double>> phi_history_;
  std::unique_ptr<Agent> loop1_;
  std::unique_ptr<Agent> loop2_owned_;
  Agent* loop2_ = nullptr;
  rl::EpsilonSchedule schedule_;
  std::optional<RunSink> sink_;
};

}  // namespace

RunReport run(const ScenarioConfig& config, const RunOptions& options)
{
  validate(config);
  Engine engine(config, options);
  return engine.run();
}

RunReport baseline_random(const ScenarioConfig& config, RunOptions options)
{
  options.random_policy = true;
  return run(config, options);
}

}  // namespace ranslice::sim
