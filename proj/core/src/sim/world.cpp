#include "ranslice/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "ranslice/delay.hpp"

namespace ranslice::sim {

namespace {

constexpr std::size_t kNoRuntime = std::numeric_limits<std::size_t>::max();

std::vector<slicing::Slice> slices_for(const ScenarioConfig& config, const auction::AuctionInstance& instance,
                                       const auction::AuctionOutcome& outcome)
{
  std::vector<slicing::Slice> slices;
  SliceId id = 0;
  for (const auto& key : outcome.winners) {
    slicing::Slice s;
    s.id = id++;
    s.service_id = key.service;
    s.tenant_id = key.tenant;
    s.rb_budget = outcome.allocations.at(key);
    s.buffer_capacity = config.buffer_capacity;
    s.buffer_threshold = config.buffer_threshold;
    slices.push_back(s);
  }
  (void)instance;
  return slices;
}

const slicing::Service& service_of(const ScenarioConfig& config, ServiceId id)
{
  return config.services.at(id);
}

}  // namespace

auction::AuctionInstance draw_auction(const ScenarioConfig& config, std::uint64_t seed)
{
  validate(config);
  auto rng = make_stream(seed, streams::kAuction);
  const auto& a = config.auction;
  std::uniform_int_distribution<std::size_t> service(0, config.services.size() - 1);
  std::uniform_int_distribution<RbCount> quantity(a.quantity_min, a.quantity_max);
  std::uniform_real_distribution<double> price(a.price_min, a.price_max);
  auction::AuctionInstance instance;
  instance.config.total_rbs = a.total_rbs;
  instance.config.reserve_price = a.reserve_price;
  for (int l = 0; l < a.tenants; ++l) {
    auction::TenantBid bid;
    bid.tenant_id = static_cast<TenantId>(l);
    bid.service_id = static_cast<ServiceId>(service(rng));
    bid.quantity = quantity(rng);
    bid.price_per_rb = price(rng);
    instance.bids.push_back(bid);
  }
  return instance;
}

World::World(const ScenarioConfig& config, std::uint64_t seed)
    : config_(config),
      seed_(seed),
      instance_(draw_auction(config, seed)),
      outcome_(auction::run_auction(instance_.bids, instance_.config)),
      all_slices_(slices_for(config, instance_, outcome_)),
      placement_(slicing::round_robin_place(all_slices_,
                                            slicing::initial_split(config.auction.total_rbs, config.auction.vodus))),
      registry_(all_slices_, placement_),
      numerology_(radio::Numerology::from_index(config.channel.numerology)),
      mobility_(mobility::Bounds{0.0, config.area.width, 0.0, config.area.height}, config.fleet.heading_sigma,
                make_stream(seed, streams::kMobility))
{
  for (std::size_t i = 0; i < config_.orus.size(); ++i) {
    config_.orus[i].id = static_cast<OruId>(i);
  }
  RbCount offset = 0;
  for (std::size_t d = 0; d < registry_.vodu_count(); ++d) {
    vodu_offsets_.push_back(offset);
    offset += registry_.capacity(static_cast<VoduId>(d));
  }

  // Cars.
  auto car_rng = make_stream(seed, streams::kCars);
  std::uniform_real_distribution<double> ux(0.0, config.area.width);
  std::uniform_real_distribution<double> uy(0.0, config.area.height);
  std::uniform_real_distribution<double> uh(-std::numbers::pi, std::numbers::pi);
  const auto& f = config.fleet;
  CarId next_car = 0;
  for (int i = 0; i < f.flying + f.ground; ++i) {
    mobility::Car car;
    car.id = next_car++;
    const bool flying = i < f.flying;
    car.kind = flying ? mobility::CarKind::Flying : mobility::CarKind::Ground;
    car.x = ux(car_rng);
    car.y = uy(car_rng);
    car.heading = uh(car_rng);
    if (flying) {
      car.height = std::uniform_real_distribution<double>(f.flying_height_min, f.flying_height_max)(car_rng);
      car.speed = std::uniform_real_distribution<double>(f.flying_speed_min, f.flying_speed_max)(car_rng);
    } else {
      car.speed = std::uniform_real_distribution<double>(f.ground_speed_min, f.ground_speed_max)(car_rng);
    }
    mobility::validate(car);
    cars_.push_back(car);
  }
  if (!f.trace_file.empty()) {
    trace_ = mobility::Trace::load(f.trace_file);
    trace_->apply(cars_, 0.0);
  }

  // Subscriptions: services that have at least one placed slice.
  std::map<ServiceId, std::vector<SliceId>> slices_by_service;
  for (const auto& s : registry_.slices()) {
    slices_by_service[s.service_id].push_back(s.id);
  }
  std::vector<ServiceId> served;
  for (const auto& [service, ids] : slices_by_service) {
    served.push_back(service);
  }
  auto sub_rng = make_stream(seed, streams::kSubscriptions);
  std::uniform_int_distribution<int> count(f.services_per_car_min, f.services_per_car_max);
  for (auto& car : cars_) {
    const int wanted = count(sub_rng);
    if (served.empty()) {
      dropped_flows_ += wanted;
      continue;
    }
    std::vector<ServiceId> pool = served;
    std::shuffle(pool.begin(), pool.end(), sub_rng);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(wanted), pool.size());
    dropped_flows_ += wanted - static_cast<int>(take);
    for (std::size_t k = 0; k < take; ++k) {
      const auto& candidates = slices_by_service.at(pool[k]);
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      car.subscribed_services.insert(pool[k]);
      flows_.push_back({car.id, pool[k], candidates[pick(sub_rng)]});
    }
  }
  std::stable_sort(flows_.begin(), flows_.end(), [](const Flow& a, const Flow& b) {
    return a.slice != b.slice ? a.slice < b.slice : a.car < b.car;
  });

  // Per-slice runtime.
  runtime_index_.assign(all_slices_.size(), kNoRuntime);
  for (const auto& s : registry_.slices()) {
    runtime_index_[s.id] = runtimes_.size();
    SliceRuntime rt{{},
                    {},
                    0.0,
                    0.0,
                    0,
                    radio::ChannelSampler(make_stream(seed, streams::kChannelBase + s.id), config_.channel.params),
                    make_stream(seed, streams::kTrafficBase + s.id)};
    rt.state.buffer_capacity = s.buffer_capacity;
    rt.state.buffer_threshold = s.buffer_threshold;
    rt.state.omega = 1.0;
    rt.state.psi = s.buffer_capacity;
    for (std::size_t i = 0; i < flows_.size(); ++i) {
      if (flows_[i].slice == s.id) {
        rt.flows.push_back(i);
      }
    }
    rt.state.max_cars = static_cast<int>(rt.flows.size());
    runtimes_.push_back(std::move(rt));
  }
}

World::SliceRuntime& World::runtime(SliceId slice)
{
  const auto idx = slice < runtime_index_.size() ? runtime_index_[slice] : kNoRuntime;
  if (idx == kNoRuntime) {
    throw std::out_of_range("world: slice " + std::to_string(slice) + " is not placed");
  }
  return runtimes_[idx];
}

const World::SliceRuntime& World::runtime(SliceId slice) const
{
  return const_cast<World*>(this)->runtime(slice);
}

loops::Loop1State World::loop1_state(SliceId slice) const
{
  return runtime(slice).state;
}

loops::Loop2State World::loop2_state(SliceId slice) const
{
  const auto& s = registry_.slice(slice);
  const VoduId d = *s.vodu;
  return {registry_.free(d), registry_.capacity(d), registry_.usage(d), s.rb_budget};
}

double World::last_nu(SliceId slice) const
{
  return runtime(slice).nu;
}

double World::window_nu(SliceId slice) const
{
  const auto& rt = runtime(slice);
  return rt.nu_ticks == 0 ? rt.nu : rt.nu_sum / rt.nu_ticks;
}

std::optional<OruId> World::serving_oru(const mobility::Car& car, double budget_s) const
{
  std::optional<OruId> best;
  double best_distance = kInfinity;
  for (const auto& oru : config_.orus) {
    if (mobility::coverage_probability(car, oru, budget_s, config_.dwell_rule) != 1) {
      continue;
    }
    const double dist = mobility::distance(car, oru);
    if (dist < best_distance) {
      best_distance = dist;
      best = oru.id;
    }
  }
  return best;
}

VoduTick World::run_vodu(VoduId d, std::span<const loops::LoopAction> actions)
{
  const auto& ids = registry_.slices_on(d);
  if (actions.size() != ids.size()) {
    throw std::invalid_argument("run_vodu: one action per slice expected");
  }
  VoduTick tick;
  tick.vodu = d;

  std::vector<RbCount> budgets;
  std::vector<RbCount> requests;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& s = registry_.slice(ids[i]);
    budgets.push_back(s.rb_budget);
    requests.push_back(loops::effective_budget(actions[i], s.rb_budget, s.buffer_capacity, s.buffer_threshold));
  }
  RbCount requested = 0;
  for (const auto r : requests) {
    requested += r;
  }
  tick.requests_fit = requested <= registry_.capacity(d);
  const auto grants = loops::grant_requests(budgets, requests, registry_.capacity(d));

  const auto& penalties = config_.rewards.penalties;
  RbCount cursor = vodu_offsets_[d];
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& s = registry_.slice(ids[i]);
    auto& rt = runtime(s.id);
    const auto& service = service_of(config_, s.service_id);

    SliceTick st;
    st.slice = s.id;
    st.vodu = d;
    st.action = actions[i];
    st.budget = s.rb_budget;
    st.request = requests[i];
    st.granted = grants[i].granted;
    st.excess = grants[i].excess;

    std::vector<radio::RbIndex> rbs;
    for (RbCount k = 0; k < st.granted; ++k) {
      rbs.push_back({0, static_cast<int>(cursor + k)});
    }
    cursor += st.granted;

    // Flows eligible this tick: covered by some O-RU.
    std::uniform_real_distribution<double> packet(service.packet_min_bytes, service.packet_max_bytes);
    const double mean_packet = service.mean_packet_bytes();
    std::vector<std::size_t> eligible;
    std::vector<CarId> cars;
    std::vector<OruId> orus;
    std::vector<double> packets;
    std::vector<double> distances;
    st.flows.resize(rt.flows.size());
    for (std::size_t k = 0; k < rt.flows.size(); ++k) {
      const auto& flow = flows_[rt.flows[k]];
      const auto& car = cars_[flow.car];
      auto& out = st.flows[k];
      out.car = car.id;
      const double o = packet(rt.traffic);
      const auto oru = serving_oru(car, service.delay_budget_s);
      if (!oru) {
        out.delay_s = kInfinity;
        continue;
      }
      out.covered = true;
      out.oru = *oru;
      eligible.push_back(k);
      cars.push_back(car.id);
      orus.push_back(*oru);
      packets.push_back(o);
      distances.push_back(std::max(1.0, mobility::distance(car, config_.orus[*oru])));
    }

    const auto delay_for = [&](std::size_t j, double rate) {
      const auto& oru = config_.orus[orus[j]];
      delay::FlowStats fs;
      fs.arrival_rate = service.arrival_rate;
      fs.service_rate = delay::service_rate(rate, mean_packet);
      fs.packet_bytes = packets[j];
      fs.assignment = 1;
      return delay::end_to_end(fs, rate, oru.fronthaul_capacity, oru.fronthaul_length,
                               config_.channel.propagation_speed)
          .total;
    };
    const auto rate_fn = [&](std::size_t j, const radio::RbIndex&) {
      const auto channel = rt.channel.sample();
      const double snr = radio::snr(channel, distances[j], 1, config_.channel.params.path_loss_exponent,
                                    config_.channel.params.mode);
      return radio::rb_rate(numerology_, snr, 1);
    };
    const auto satisfied_fn = [&](std::size_t j, double rate) {
      if (service.arrival_rate <= 0.0) {
        return true;
      }
      return rate > 0.0 && delay::budget_fulfillment(delay_for(j, rate), service.delay_budget_s) == 1;
    };
    auto schedule = loops::loop1_schedule(s.id, rbs, cars, orus, rate_fn, satisfied_fn,
                                          config_.rewards.max_rbs_per_flow);
    st.used = schedule.rbs_used;

    // Delays, satisfaction and queue occupancy.
    std::vector<int> assigned(rt.flows.size(), 0);
    std::vector<int> fulfilled(rt.flows.size(), 0);
    std::map<OruId, double> fronthaul_load;
    double occupancy = 0.0;
    for (std::size_t j = 0; j < eligible.size(); ++j) {
      auto& out = st.flows[eligible[j]];
      out.rbs = schedule.flow_rbs[j];
      out.rate_bps = schedule.flow_rate[j];
      if (service.arrival_rate <= 0.0) {
        out.delay_s = 0.0;
        out.fulfilled = 1;
        assigned[eligible[j]] = 1;
        fulfilled[eligible[j]] = 1;
        continue;
      }
      out.delay_s = out.rbs > 0 ? delay_for(j, out.rate_bps) : kInfinity;
      out.fulfilled = delay::budget_fulfillment(out.delay_s, service.delay_budget_s);
      assigned[eligible[j]] = out.rbs > 0 ? 1 : 0;
      fulfilled[eligible[j]] = out.fulfilled;
      const double mu = delay::service_rate(out.rate_bps, mean_packet);
      occupancy += std::min(delay::mm1_occupancy(service.arrival_rate, mu), s.buffer_capacity);
      if (out.rbs > 0) {
        fronthaul_load[out.oru] += service.arrival_rate * 8.0 * packets[j];
      }
    }
    const auto sat = delay::slice_satisfaction(assigned, fulfilled);
    st.phi = sat.phi;
    st.no_demand = sat.no_demand;
    st.occupancy = occupancy;
    st.psi = delay::queue_status(s.buffer_capacity, s.buffer_threshold, occupancy).status;
    st.omega = delay::orchestration(st.psi, s.buffer_capacity, s.buffer_threshold);
    st.nu = loops::coupling_nu(schedule.flow_rbs, st.omega, s.rb_budget);

    for (const auto& a : assigned) {
      st.cars_served += a;
    }
    const auto violations = radio::check_orthogonality(schedule.assignments);
    st.orthogonality_violations = static_cast<int>(violations.size());
    st.max_cars_per_rb = schedule.assignments.empty() ? 0 : 1;
    for (const auto& v : violations) {
      st.max_cars_per_rb = std::max(st.max_cars_per_rb, static_cast<int>(v.cars.size()));
    }

    // Worst fronthaul margin among the O-RUs this slice used.
    double fh_capacity = config_.orus.front().fronthaul_capacity;
    double fh_load = 0.0;
    double worst = kInfinity;
    for (const auto& [oru, load] : fronthaul_load) {
      const double margin = config_.orus[oru].fronthaul_capacity - load;
      if (margin < worst) {
        worst = margin;
        fh_capacity = config_.orus[oru].fronthaul_capacity;
        fh_load = load;
      }
    }
    st.fronthaul_overload = fh_load > fh_capacity;

    loops::Loop1RewardInputs in;
    in.phi = st.phi;
    in.fronthaul_capacity_bps = fh_capacity;
    in.fronthaul_load_bps = fh_load;
    in.max_cars_per_rb = st.max_cars_per_rb;
    in.nu = st.nu;
    in.free_rbs = registry_.free(d);
    in.rejected_rbs = st.excess;
    st.r1 = loops::loop1_reward(in, penalties, config_.rewards.mode);

    if (config_.run.write_assignments) {
      st.assignments = std::move(schedule.assignments);
      st.rates = std::move(schedule.rates);
    }

    rt.nu = st.nu;
    rt.nu_sum += st.nu;
    ++rt.nu_ticks;
    rt.state.cars_served = st.cars_served;
    rt.state.omega = st.omega;
    rt.state.psi = st.psi;
    tick.slices.push_back(std::move(st));
  }
  return tick;
}

void World::score(VoduTick& tick) const
{
  const VoduId d = tick.vodu;
  const auto& p = config_.rewards.penalties;
  double r1_sum = 0.0;
  double r2_sum = 0.0;
  for (auto& st : tick.slices) {
    loops::Loop2RewardInputs in;
    in.placed = true;
    in.usage = registry_.usage(d);
    in.placement_count = registry_.placement_count(st.slice);
    in.capacity = registry_.capacity(d);
    in.allocated = registry_.allocated(d);
    in.nu = st.nu;
    st.r2 = loops::loop2_reward(in, p, config_.rewards.mode);
    r1_sum += st.r1;
    r2_sum += st.r2;
  }
  const auto n = static_cast<double>(tick.slices.size());
  tick.r1 = tick.slices.empty() ? 0.0 : r1_sum / n;
  tick.r2 = tick.slices.empty() ? 0.0 : r2_sum / n;
  tick.main = loops::main_reward(tick.r2, tick.r1, config_.rewards.phi_dis);
}

loops::BudgetProposal World::apply_loop2(SliceId slice, loops::LoopAction action)
{
  const auto& s = registry_.slice(slice);
  const VoduId d = *s.vodu;
  auto& rt = runtime(slice);
  auto proposal = loops::loop2_budget_update(action, window_nu(slice), s.rb_budget, registry_.free(d));
  const auto change = registry_.apply_delta(slice, proposal.applied);
  proposal.applied = change.applied;
  rt.nu_sum = 0.0;
  rt.nu_ticks = 0;
  return proposal;
}

void World::advance()
{
  time_ += config_.run.tick_s;
  if (trace_) {
    trace_->apply(cars_, time_);
  } else {
    mobility_.step(cars_, config_.run.tick_s);
  }
}

}  // namespace ranslice::sim
