// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "generators.hpp"
#include "gradient_check.hpp"
#include "ranslice/auction.hpp"
#include "ranslice/auction_io.hpp"
#include "ranslice/mm1.hpp"
#include "ranslice/sim/config.hpp"
#include "ranslice/sim/simulation.hpp"

namespace {

using namespace ranslice;
namespace fs = std::filesystem;

constexpr int kSeeds = 5;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format(const char* fmt, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

/// One-sided paired t-test of mean(a - b) > 0; returns the p-value.
double paired_p_value(const std::vector<double>& a, const std::vector<double>& b)
{
  const auto n = a.size();
  std::vector<double> d(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = a[i] - b[i];
    mean += d[i];
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const double x : d) {
    var += (x - mean) * (x - mean);
  }
  var /= static_cast<double>(n - 1);
  if (var == 0.0) {
    return mean > 0.0 ? 0.0 : 1.0;
  }
  const double t = mean / std::sqrt(var / static_cast<double>(n));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  return boost::math::cdf(boost::math::complement(dist, t));
}

Verdict auction_properties()
{
  const auto start = std::chrono::steady_clock::now();
  Rng rng = make_stream(1001, 0);
  int rational = 0;
  int feasible = 0;
  int bounded = 0;
  int monotone = 0;
  int probes = 0;
  const int trials = 1'000;
  for (int trial = 0; trial < trials; ++trial) {
    const auto c = testgen::auction_case(rng, 12, 300);
    const auto out = auction::run_auction(c.bids, c.config);
    bool ir = true;
    bool cap = true;
    for (std::size_t i = 0; i < c.bids.size(); ++i) {
      const auto& bid = c.bids[i];
      if (!out.is_winner(bid.key())) {
        continue;
      }
      ir = ir && auction::tenant_utility(bid, bid.price_per_rb, out) >= -1e-9;
      cap = cap && out.payments.at(bid.key()) <= bid.value() + 1e-9;
      auto raised = c.bids;
      raised[i].price_per_rb *= 1.1;
      ++probes;
      monotone += auction::run_auction(raised, c.config).is_winner(bid.key()) ? 1 : 0;
    }
    rational += ir ? 1 : 0;
    bounded += cap ? 1 : 0;
    feasible += out.allocated_rbs() <= c.config.total_rbs ? 1 : 0;
  }
  const double secs = seconds_since(start);
  const bool pass = rational == trials && feasible == trials && bounded == trials && monotone == probes && secs < 10.0;
  return {pass, format("IR %d/%d, feasible %d/%d, payment<=value %d/%d, monotone %d/%d, %.2f s", rational, trials,
                       feasible, trials, bounded, trials, monotone, probes, secs)};
}

Verdict auction_oracle()
{
  Rng rng = make_stream(1002, 0);
  int agree = 0;
  int matched = 0;
  int gaps = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const auto c = testgen::auction_case(rng, 8, 60, 10);
    const auto greedy = auction::determine_winners(c.bids, c.config);
    const auto opt = auction::brute_force_optimal(c.bids, c.config);
    if (greedy.welfare == opt.best_value) {
      ++agree;
      matched += greedy.decisions == opt.decisions ? 1 : 0;
    } else {
      ++gaps;
    }
  }
  return {matched == agree, format("greedy=oracle welfare on %d/%d, decisions identical on %d/%d, gap fraction %.3f",
                                   agree, trials, matched, agree, static_cast<double>(gaps) / trials)};
}

Verdict worked_example()
{
  const auto inst = auction::load_instance(RANSLICE_SOURCE_DIR "/data/auction_example.json");
  const auto out = auction::run_auction(inst.bids, inst.config);
  const std::vector<auction::BidKey> expected{{1, 0}, {2, 0}};
  const bool pass = out.winners == expected && out.payments.at({1, 0}) == 48.0 && out.payments.at({2, 0}) == 48.0;
  return {pass, format("winners %zu, payments %.4f and %.4f, allocated %lld", out.winners.size(),
                       out.payments.count({1, 0}) ? out.payments.at({1, 0}) : -1.0,
                       out.payments.count({2, 0}) ? out.payments.at({2, 0}) : -1.0,
                       static_cast<long long>(out.allocated_rbs()))};
}

Verdict mm1_check()
{
  Rng rng = make_stream(1004, 0);
  const auto r = delay::simulate_mm1(50.0, 100.0, 200'000, rng);
  const double err = std::abs(r.mean_sojourn - 0.02) / 0.02;
  return {r.packets >= 100'000 && err <= 0.05,
          format("%llu packets, mean sojourn %.5f s, relative error %.4f", static_cast<unsigned long long>(r.packets),
                 r.mean_sojourn, err)};
}

Verdict gradient_check()
{
  Rng rng = make_stream(1005, 0);
  double worst = 0.0;
  std::size_t params = 0;
  for (int sample = 0; sample < 20; ++sample) {
    rl::QNetwork net({3, 8, 4}, rng);
    for (auto& p : net.parameters()) {
      p += testgen::uniform_real(rng, -0.1, 0.1);
    }
    const auto x = testgen::random_vector(rng, 3, -1.0, 1.0);
    const auto check = testgen::check_gradient(net, x, testgen::uniform_int(rng, 0, 3),
                                               testgen::uniform_real(rng, -2.0, 2.0));
    worst = std::max(worst, check.worst_relative);
    params += check.checked;
  }
  return {worst < 1e-5, format("%zu parameter checks, worst relative error %.3e", params, worst)};
}

struct SeedRuns {
  std::vector<sim::RunReport> trained;
  std::vector<sim::RunReport> random;
  double first_runtime = 0.0;
  fs::path first_dir;
};

SeedRuns run_seeds(const fs::path& scratch)
{
  SeedRuns out;
  for (int s = 1; s <= kSeeds; ++s) {
    auto config = sim::default_config();
    config.run.seed = static_cast<std::uint64_t>(s);
    sim::RunOptions opts;
    if (s == 1) {
      out.first_dir = scratch / "seed1_a";
      opts.output_dir = out.first_dir;
    }
    const auto start = std::chrono::steady_clock::now();
    out.trained.push_back(sim::run(config, opts));
    if (s == 1) {
      out.first_runtime = seconds_since(start);
    }
    out.random.push_back(sim::baseline_random(config));
    std::printf("  seed %d: first %.4f final %.4f random %.4f phi %.4f capacity %.4f\n", s,
                out.trained.back().first_window_reward, out.trained.back().final_window_reward,
                out.random.back().final_window_reward, out.trained.back().final_phi,
                out.trained.back().capacity_ok_fraction());
    std::fflush(stdout);
  }
  return out;
}

Verdict structural(const sim::RunReport& r, double runtime)
{
  const double fraction = r.capacity_ok_fraction();
  const bool pass = r.steps == 10'000 && r.orthogonality_violations == 0 && r.placement_violations == 0 &&
                    r.conservation_failures == 0 && r.conservation_checks > 0 && fraction >= 0.90 && runtime < 300.0;
  return {pass, format("orthogonality %llu, placement %llu, conservation failures %llu/%llu, capacity ok %.4f, %.1f s",
                       static_cast<unsigned long long>(r.orthogonality_violations),
                       static_cast<unsigned long long>(r.placement_violations),
                       static_cast<unsigned long long>(r.conservation_failures),
                       static_cast<unsigned long long>(r.conservation_checks), fraction, runtime)};
}

Verdict learning_signal(const SeedRuns& runs)
{
  std::vector<double> first;
  std::vector<double> final;
  std::vector<double> random;
  for (int i = 0; i < kSeeds; ++i) {
    first.push_back(runs.trained[i].first_window_reward);
    final.push_back(runs.trained[i].final_window_reward);
    random.push_back(runs.random[i].final_window_reward);
  }
  const double p_first = paired_p_value(final, first);
  const double p_random = paired_p_value(final, random);
  return {p_first < 0.05 && p_random < 0.05,
          format("final>first p=%.4g, final>random p=%.4g (one-sided paired t, df=%d)", p_first, p_random, kSeeds - 1)};
}

Verdict satisfaction(const SeedRuns& runs)
{
  double sum = 0.0;
  for (const auto& r : runs.trained) {
    sum += r.final_phi;
    for (const auto& s : r.slices) {
      if (!s.has_demand) {
        std::printf("  seed %llu slice %u (service %u, vO-DU %u): no demand\n", static_cast<unsigned long long>(r.seed),
                    s.id, s.service, s.vodu);
        continue;
      }
      std::printf("  seed %llu slice %u (service %u, vO-DU %u): phi mean %.3f min %.3f p10 %.3f median %.3f max %.3f\n",
                  static_cast<unsigned long long>(r.seed), s.id, s.service, s.vodu, s.phi_mean, s.phi_min, s.phi_p10,
                  s.phi_median, s.phi_max);
    }
  }
  const double mean = sum / kSeeds;
  return {mean >= 0.90, format("mean phi over %d seeds %.4f (threshold 0.90)", kSeeds, mean)};
}

Verdict determinism(const SeedRuns& runs, const fs::path& scratch)
{
  auto config = sim::default_config();
  config.run.seed = 1;
  sim::RunOptions opts;
  opts.output_dir = scratch / "seed1_b";
  (void)sim::run(config, opts);
  const auto a = slurp(runs.first_dir / "metrics.csv");
  const auto b = slurp(opts.output_dir / "metrics.csv");
  return {!a.empty() && a == b, format("metrics.csv %zu vs %zu bytes, identical: %s", a.size(), b.size(),
                                       a == b ? "yes" : "no")};
}

Verdict config_constants()
{
  const auto c = sim::default_config();
  const bool pass = c.auction.total_rbs == 273 && c.auction.vodus == 3 &&
                    c.auction.total_rbs / c.auction.vodus == 91 && c.orus.size() == 6 && c.rl.learning_rate == 1e-4 &&
                    c.rl.gamma == 0.99 && c.rl.replay_capacity == 50'000 &&
                    c.rl.layers == std::vector<int>{3, 64, 64, 4} && c.rewards.phi_dis == 0.0018 &&
                    c.auction.reserve_price == 15.0;
  return {pass, format("B=%lld D=%d b_d=%lld O-RUs=%zu alpha=%g gamma=%g replay=%zu phi_dis=%g b_p=%g",
                       static_cast<long long>(c.auction.total_rbs), c.auction.vodus,
                       static_cast<long long>(c.auction.total_rbs / c.auction.vodus), c.orus.size(),
                       c.rl.learning_rate, c.rl.gamma, c.rl.replay_capacity, c.rewards.phi_dis,
                       c.auction.reserve_price)};
}

}  // namespace

int main()
{
  int failures = 0;
  const auto report = [&](int id, const char* name, const Verdict& v) {
    std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  };
  const auto guarded = [&](int id, const char* name, const std::function<Verdict()>& f) {
    try {
      report(id, name, f());
    } catch (const std::exception& e) {
      report(id, name, {false, std::string("exception: ") + e.what()});
    }
  };

  guarded(1, "auction properties", auction_properties);
  guarded(2, "auction oracle", auction_oracle);
  guarded(3, "worked VCG example", worked_example);
  guarded(4, "M/M/1 mean sojourn", mm1_check);
  guarded(5, "gradient check", gradient_check);

  const auto scratch = fs::temp_directory_path() / "ranslice_acceptance";
  fs::remove_all(scratch);
  SeedRuns runs;
  try {
    runs = run_seeds(scratch);
  } catch (const std::exception& e) {
    for (const auto& [id, name] : std::vector<std::pair<int, const char*>>{
             {6, "structural invariants"}, {7, "learning signal"}, {8, "slice satisfaction"}, {9, "determinism"}}) {
      report(id, name, {false, std::string("exception: ") + e.what()});
    }
    guarded(10, "configuration constants", config_constants);
    return failures == 0 ? 0 : 1;
  }
  guarded(6, "structural invariants", [&] { return structural(runs.trained.front(), runs.first_runtime); });
  guarded(7, "learning signal", [&] { return learning_signal(runs); });
  guarded(8, "slice satisfaction", [&] { return satisfaction(runs); });
  guarded(9, "determinism", [&] { return determinism(runs, scratch); });
  guarded(10, "configuration constants", config_constants);
  fs::remove_all(scratch);
  return failures == 0 ? 0 : 1;
}
