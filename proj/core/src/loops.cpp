#include "ranslice/loops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ranslice::loops {

std::string_view to_string(LoopAction action)
{
  switch (action) {
    case LoopAction::Keep:
      return "keep";
    case LoopAction::ScaleUp:
      return "scale_up";
    case LoopAction::ScaleDown:
      return "scale_down";
    case LoopAction::Terminate:
      return "terminate";
  }
  return "unknown";
}

LoopAction action_from_index(int index)
{
  if (index < 0 || index >= kActionCount) {
    throw std::out_of_range("loop action index " + std::to_string(index));
  }
  return static_cast<LoopAction>(index);
}

RbCount effective_budget(LoopAction action, RbCount budget, double buffer_capacity, double buffer_threshold)
{
  // The small slack keeps exact multiples (e.g. 30 * 4/3) from rounding the wrong way.
  constexpr double slack = 1e-9;
  const auto b = static_cast<double>(budget);
  switch (action) {
    case LoopAction::Keep:
      return budget;
    case LoopAction::ScaleUp:
      return static_cast<RbCount>(std::ceil(b * buffer_capacity / buffer_threshold - slack));
    case LoopAction::ScaleDown:
      return static_cast<RbCount>(std::floor(b * buffer_threshold / buffer_capacity + slack));
    case LoopAction::Terminate:
      return 0;
  }
  return budget;
}

std::array<double, 3> Loop1State::encode() const
{
  const double v = max_cars > 0 ? static_cast<double>(cars_served) / max_cars : 0.0;
  const double o = omega / (buffer_capacity / buffer_threshold);
  const double s = (psi - buffer_threshold) / (buffer_capacity - buffer_threshold);
  return {std::clamp(v, 0.0, 1.0), std::clamp(o, 0.0, 1.0), std::clamp(s, 0.0, 1.0)};
}

std::array<double, 3> Loop2State::encode() const
{
  const double cap = capacity > 0 ? static_cast<double>(capacity) : 1.0;
  return {std::clamp(static_cast<double>(free) / cap, 0.0, 1.0), std::clamp(usage, 0.0, 1.0),
          std::clamp(static_cast<double>(budget) / cap, 0.0, 1.0)};
}

std::vector<SliceGrant> grant_requests(std::span<const RbCount> budgets, std::span<const RbCount> requests,
                                       RbCount capacity)
{
  if (budgets.size() != requests.size()) {
    throw std::invalid_argument("grant_requests: one request per budget expected");
  }
  RbCount pool = capacity;
  for (const auto b : budgets) {
    pool -= b;
  }
  if (pool < 0) {
    throw std::invalid_argument("grant_requests: budgets exceed capacity");
  }
  std::vector<SliceGrant> grants(budgets.size());
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    grants[i].granted = std::min(std::max<RbCount>(requests[i], 0), budgets[i]);
  }
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const RbCount extra = std::min(std::max<RbCount>(requests[i] - grants[i].granted, 0), pool);
    grants[i].granted += extra;
    pool -= extra;
    grants[i].excess = std::max<RbCount>(requests[i], 0) - grants[i].granted;
  }
  return grants;
}

ScheduleResult loop1_schedule(SliceId slice, std::span<const radio::RbIndex> rbs, std::span<const CarId> cars,
                              std::span<const OruId> orus, const RateFn& rate, const SatisfiedFn& satisfied,
                              int max_rbs_per_flow)
{
  if (cars.size() != orus.size()) {
    throw std::invalid_argument("loop1_schedule: one O-RU per flow expected");
  }
  const std::size_t n = cars.size();
  ScheduleResult result;
  result.flow_rate.assign(n, 0.0);
  result.flow_rbs.assign(n, 0);

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (!satisfied(i, 0.0)) {
      active.push_back(i);
    }
  }

  std::size_t next = 0;
  while (!active.empty() && next < rbs.size()) {
    std::vector<std::size_t> still;
    for (const auto i : active) {
      if (next >= rbs.size()) {
        still.push_back(i);
        continue;
      }
      const auto& rb = rbs[next++];
      const double r = rate(i, rb);
      result.assignments.push_back({cars[i], orus[i], slice, rb, 1});
      result.rates.push_back(r);
      result.flow_rate[i] += r;
      result.flow_rbs[i] += 1;
      if (!satisfied(i, result.flow_rate[i]) && result.flow_rbs[i] < max_rbs_per_flow) {
        still.push_back(i);
      }
    }
    active.swap(still);
  }
  result.rbs_used = static_cast<RbCount>(next);
  return result;
}

double coupling_nu(std::span<const int> rbs_per_car, double omega, RbCount budget)
{
  double used = 0.0;
  for (const auto r : rbs_per_car) {
    used += r;
  }
  return used * omega - static_cast<double>(budget);
}

double loop1_reward(const Loop1RewardInputs& in, const Penalties& p, RewardMode mode)
{
  const double fronthaul_margin = in.fronthaul_capacity_bps - in.fronthaul_load_bps;
  const double orthogonality_margin = 1.0 - in.max_cars_per_rb;
  if (mode == RewardMode::Literal) {
    return p.satisfaction_weight * in.phi + p.fronthaul * fronthaul_margin + p.orthogonality * orthogonality_margin -
           p.coupling * in.nu;
  }
  const double coupling_margin = static_cast<double>(in.free_rbs) - in.nu;
  return p.satisfaction_weight * in.phi + p.fronthaul * std::min(0.0, fronthaul_margin) +
         p.orthogonality * std::min(0.0, orthogonality_margin) + p.coupling * std::min(0.0, coupling_margin) -
         p.coupling * static_cast<double>(in.rejected_rbs);
}

double loop2_reward(const Loop2RewardInputs& in, const Penalties& p, RewardMode mode)
{
  const double utilisation = in.placed ? in.usage : 0.0;
  const double placement_margin = 1.0 - in.placement_count;
  const double slack = static_cast<double>(in.capacity - in.allocated);
  if (mode == RewardMode::Literal) {
    return utilisation + p.placement * placement_margin + p.capacity * (slack + in.nu);
  }
  return utilisation + p.placement * std::min(0.0, placement_margin) + p.capacity * std::min(0.0, slack - in.nu);
}

double main_reward(double r2, double r1, double phi_dis)
{
  return r2 + phi_dis * r1;
}

BudgetProposal loop2_budget_update(LoopAction action, double nu, RbCount budget, RbCount free, double scale_ratio)
{
  if (!(scale_ratio >= 1.0) || !std::isfinite(scale_ratio)) {
    throw std::invalid_argument("loop2_budget_update: scale ratio must be finite and >= 1");
  }
  BudgetProposal out;
  const auto rounded = static_cast<RbCount>(std::lround(nu));
  const double b = static_cast<double>(budget);
  const auto up = std::max<RbCount>(static_cast<RbCount>(std::ceil(b * scale_ratio - 1e-9)) - budget, 1);
  const auto down = std::max<RbCount>(budget - static_cast<RbCount>(std::floor(b / scale_ratio + 1e-9)), 1);
  switch (action) {
    case LoopAction::Keep:
      out.proposed = 0;
      break;
    case LoopAction::ScaleUp:
      out.proposed = std::max(rounded, up);
      break;
    case LoopAction::ScaleDown:
      out.proposed = std::min(rounded, -down);
      break;
    case LoopAction::Terminate:
      out.proposed = -budget;
      break;
  }
  out.applied = std::clamp(out.proposed, -budget, std::max<RbCount>(free, 0));
  out.exceeded = out.proposed > free;
  return out;
}

}  // namespace ranslice::loops
