#include "ranslice/sim/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace ranslice::sim {

ConfigError::ConfigError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

std::vector<mobility::ORU> default_orus()
{
  std::vector<mobility::ORU> orus;
  OruId id = 0;
  for (const double y : {200.0, 600.0}) {
    for (const double x : {200.0, 600.0, 1000.0}) {
      mobility::ORU o;
      o.id = id++;
      o.x = x;
      o.y = y;
      o.height = 25.0;
      o.coverage_radius = 350.0;
      o.fronthaul_capacity = 10e9;
      o.fronthaul_length = 2000.0;
      orus.push_back(o);
    }
  }
  return orus;
}

ScenarioConfig default_config()
{
  ScenarioConfig c;
  c.orus = default_orus();
  c.services = slicing::default_catalog();
  return c;
}

ScenarioConfig full_profile(ScenarioConfig base)
{
  base.fleet.ground = 35;
  base.run.steps = 100'000;
  return base;
}

namespace {

using LineMap = std::map<std::string, int>;

class Validator {
 public:
  explicit Validator(const LineMap* lines) : lines_(lines) {}

  void require(bool ok, const std::string& path, const std::string& message) const
  {
    if (ok) {
      return;
    }
    int line = 0;
    if (lines_ != nullptr) {
      // Fall back to the enclosing section when the field itself was defaulted.
      std::string key = path;
      while (!key.empty()) {
        if (const auto it = lines_->find(key); it != lines_->end()) {
          line = it->second;
          break;
        }
        const auto dot = key.find_last_of(".[");
        key = dot == std::string::npos ? std::string() : key.substr(0, dot);
      }
    }
    throw ConfigError(path + ": " + message, line);
  }

 private:
  const LineMap* lines_;
};

void validate_impl(const ScenarioConfig& c, const LineMap* lines)
{
  const Validator v(lines);
  v.require(c.schema_version == kSchemaVersion, "schema_version",
            "unsupported schema version " + std::to_string(c.schema_version));

  v.require(c.run.tick_s > 0.0, "run.tick_s", "must be positive");
  v.require(c.run.loop2_period >= 1, "run.loop2_period", "must be at least 1");
  v.require(c.run.actors >= 1, "run.actors", "must be at least 1");
  v.require(c.run.actor_sync_period >= 1, "run.actor_sync_period", "must be at least 1");

  const auto& f = c.fleet;
  v.require(f.flying >= 0 && f.ground >= 0, "fleet", "car counts must be non-negative");
  v.require(f.flying + f.ground >= 1, "fleet", "need at least one car");
  v.require(0.0 <= f.flying_speed_min && f.flying_speed_min <= f.flying_speed_max &&
                f.flying_speed_max <= mobility::kMaxSpeed,
            "fleet.flying_speed", "need 0 <= min <= max <= 300 km/h");
  v.require(0.0 <= f.ground_speed_min && f.ground_speed_min <= f.ground_speed_max &&
                f.ground_speed_max <= mobility::kMaxSpeed,
            "fleet.ground_speed", "need 0 <= min <= max <= 300 km/h");
  v.require(0.0 < f.flying_height_min && f.flying_height_min <= f.flying_height_max &&
                f.flying_height_max <= mobility::kMaxCruiseHeight,
            "fleet.flying_height", "need 0 < min <= max <= 300 m");
  v.require(f.heading_sigma >= 0.0, "fleet.heading_sigma", "must be non-negative");
  v.require(1 <= f.services_per_car_min && f.services_per_car_min <= f.services_per_car_max,
            "fleet.services_per_car", "need 1 <= min <= max");

  v.require(c.area.width > 0.0 && c.area.height > 0.0, "area", "width and height must be positive");

  v.require(!c.orus.empty(), "orus", "need at least one O-RU");
  for (std::size_t i = 0; i < c.orus.size(); ++i) {
    const auto& o = c.orus[i];
    const std::string path = "orus[" + std::to_string(i) + "]";
    v.require(o.coverage_radius > 0.0, path + ".radius", "must be positive");
    v.require(o.fronthaul_capacity > 0.0, path + ".fronthaul_capacity", "must be positive");
    v.require(o.fronthaul_length >= 0.0, path + ".fronthaul_length", "must be non-negative");
    v.require(o.height >= 0.0, path + ".height", "must be non-negative");
  }

  const auto& a = c.auction;
  v.require(a.tenants >= 0, "auction.tenants", "must be non-negative");
  v.require(a.total_rbs >= 0, "auction.total_rbs", "must be non-negative");
  v.require(a.reserve_price >= 0.0, "auction.reserve_price", "must be non-negative");
  v.require(1 <= a.quantity_min && a.quantity_min <= a.quantity_max, "auction.quantity", "need 1 <= min <= max");
  v.require(0.0 <= a.price_min && a.price_min <= a.price_max, "auction.price", "need 0 <= min <= max");
  v.require(a.vodus >= 1, "auction.vodus", "must be at least 1");

  v.require(!c.services.empty(), "services", "need at least one service");
  for (std::size_t i = 0; i < c.services.size(); ++i) {
    const auto& s = c.services[i];
    const std::string path = "services[" + std::to_string(i) + "]";
    try {
      slicing::validate(s);
    } catch (const std::invalid_argument& e) {
      v.require(false, path, e.what());
    }
  }
  v.require(0.0 < c.buffer_threshold && c.buffer_threshold < c.buffer_capacity, "buffers",
            "need 0 < threshold < capacity");

  const auto& ch = c.channel;
  v.require(ch.numerology >= 0 && ch.numerology <= 4, "channel.numerology", "must lie in 0..4");
  v.require(ch.params.path_loss_exponent > 0.0, "channel.path_loss_exponent", "must be positive");
  v.require(ch.params.error_variance >= 0.0, "channel.error_variance", "must be non-negative");
  v.require(ch.params.tx_power_w > 0.0, "channel.tx_power_w", "must be positive");
  v.require(ch.params.noise_power_w > 0.0, "channel.noise_power_w", "must be positive");
  v.require(ch.propagation_speed > 0.0, "channel.propagation_speed", "must be positive");

  v.require(c.rewards.phi_dis >= 0.0, "rewards.phi_dis", "must be non-negative");
  v.require(c.rewards.max_rbs_per_flow >= 1, "rewards.max_rbs_per_flow", "must be at least 1");

  const auto& r = c.rl;
  v.require(r.layers.size() >= 2, "rl.layers", "need at least input and output layers");
  v.require(!r.layers.empty() && r.layers.front() == 3, "rl.layers", "input layer must have 3 units");
  v.require(!r.layers.empty() && r.layers.back() == loops::kActionCount, "rl.layers",
            "output layer must have 4 units");
  for (const int s : r.layers) {
    v.require(s >= 1, "rl.layers", "layer sizes must be positive");
  }
  v.require(r.learning_rate > 0.0, "rl.learning_rate", "must be positive");
  v.require(r.gamma >= 0.0 && r.gamma <= 1.0, "rl.gamma", "must lie in [0, 1]");
  v.require(r.replay_capacity >= 1, "rl.replay_capacity", "must be positive");
  v.require(r.priority_exponent >= 0.0, "rl.priority_exponent", "must be non-negative");
  v.require(r.batch_size >= 1, "rl.batch_size", "must be positive");
  v.require(r.target_sync >= 1, "rl.target_sync", "must be positive");
  v.require(r.n_step >= 1, "rl.n_step", "must be at least 1");
  v.require(r.updates_per_tick >= 1, "rl.updates_per_tick", "must be at least 1");
  v.require(0.0 <= r.epsilon_end && r.epsilon_end <= r.epsilon_start && r.epsilon_start <= 1.0, "rl.epsilon",
            "need 0 <= end <= start <= 1");
  v.require(r.epsilon_fraction >= 0.0 && r.epsilon_fraction <= 1.0, "rl.epsilon.fraction", "must lie in [0, 1]");
  v.require(r.actor_epsilon_base > 0.0 && r.actor_epsilon_base <= 1.0, "rl.epsilon.actor_base",
            "must lie in (0, 1]");
}

// ---- YAML reading ---------------------------------------------------------

int line_of(const YAML::Node& node)
{
  return node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
}

class Reader {
 public:
  LineMap lines;

  void expect_map(const YAML::Node& node, const std::string& path) const
  {
    if (!node.IsMap()) {
      throw ConfigError(path + ": expected a mapping", line_of(node));
    }
  }

  void check_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed)
  {
    expect_map(node, path);
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      const std::string full = path.empty() ? key : path + "." + key;
      if (!allowed.contains(key)) {
        throw ConfigError("unknown key '" + full + "'", line_of(kv.first));
      }
      lines[full] = line_of(kv.first);
    }
  }

  template <typename T>
  void read(const YAML::Node& node, const std::string& key, const std::string& path, T& out)
  {
    const auto child = node[key];
    if (!child) {
      return;
    }
    const std::string full = path.empty() ? key : path + "." + key;
    try {
      out = child.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(full + ": cannot read value '" + YAML::Dump(child) + "'", line_of(child));
    }
  }

  template <typename T>
  void read_range(const YAML::Node& node, const std::string& key, const std::string& path, T& lo, T& hi)
  {
    const auto child = node[key];
    if (!child) {
      return;
    }
    const std::string full = path.empty() ? key : path + "." + key;
    if (!child.IsSequence() || child.size() != 2) {
      throw ConfigError(full + ": expected [min, max]", line_of(child));
    }
    try {
      lo = child[0].as<T>();
      hi = child[1].as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(full + ": cannot read range", line_of(child));
    }
  }

  template <typename E>
  void read_enum(const YAML::Node& node, const std::string& key, const std::string& path,
                 const std::map<std::string, E>& names, E& out)
  {
    std::string text;
    read(node, key, path, text);
    if (text.empty()) {
      return;
    }
    const auto it = names.find(text);
    if (it == names.end()) {
      std::string options;
      for (const auto& [name, value] : names) {
        options += (options.empty() ? "" : ", ") + name;
      }
      throw ConfigError(path + "." + key + ": '" + text + "' is not one of " + options, line_of(node[key]));
    }
    out = it->second;
  }
};

const std::map<std::string, mobility::DwellRule> kDwellRules{{"literal", mobility::DwellRule::Literal},
                                                             {"residence", mobility::DwellRule::Residence}};
const std::map<std::string, radio::PathLossMode> kPathLoss{{"power_law", radio::PathLossMode::PowerLaw},
                                                           {"literal", radio::PathLossMode::Literal}};
const std::map<std::string, loops::RewardMode> kRewardModes{{"hinge", loops::RewardMode::Hinge},
                                                            {"literal", loops::RewardMode::Literal}};
const std::map<std::string, rl::OptimizerKind> kOptimizers{{"adam", rl::OptimizerKind::Adam},
                                                            {"sgd", rl::OptimizerKind::Sgd}};

template <typename E>
std::string name_of(const std::map<std::string, E>& names, E value)
{
  for (const auto& [name, v] : names) {
    if (v == value) {
      return name;
    }
  }
  return {};
}

void read_run(Reader& r, const YAML::Node& n, RunSection& run)
{
  r.check_keys(n, "run",
               {"seed", "steps", "tick_s", "loop2_period", "actors", "deterministic", "actor_sync_period",
                "write_assignments"});
  r.read(n, "seed", "run", run.seed);
  r.read(n, "steps", "run", run.steps);
  r.read(n, "tick_s", "run", run.tick_s);
  r.read(n, "loop2_period", "run", run.loop2_period);
  r.read(n, "actors", "run", run.actors);
  r.read(n, "deterministic", "run", run.deterministic);
  r.read(n, "actor_sync_period", "run", run.actor_sync_period);
  r.read(n, "write_assignments", "run", run.write_assignments);
}

void read_fleet(Reader& r, const YAML::Node& n, FleetSection& f)
{
  r.check_keys(n, "fleet",
               {"flying", "ground", "flying_speed", "flying_height", "ground_speed", "heading_sigma",
                "services_per_car", "trace_file"});
  r.read(n, "flying", "fleet", f.flying);
  r.read(n, "ground", "fleet", f.ground);
  r.read_range(n, "flying_speed", "fleet", f.flying_speed_min, f.flying_speed_max);
  r.read_range(n, "flying_height", "fleet", f.flying_height_min, f.flying_height_max);
  r.read_range(n, "ground_speed", "fleet", f.ground_speed_min, f.ground_speed_max);
  r.read(n, "heading_sigma", "fleet", f.heading_sigma);
  r.read_range(n, "services_per_car", "fleet", f.services_per_car_min, f.services_per_car_max);
  r.read(n, "trace_file", "fleet", f.trace_file);
}

void read_orus(Reader& r, const YAML::Node& n, std::vector<mobility::ORU>& orus)
{
  if (!n.IsSequence()) {
    throw ConfigError("orus: expected a list", line_of(n));
  }
  orus.clear();
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string path = "orus[" + std::to_string(i) + "]";
    const auto item = n[i];
    r.check_keys(item, path, {"x", "y", "height", "radius", "fronthaul_capacity", "fronthaul_length"});
    r.lines[path] = line_of(item);
    mobility::ORU o;
    o.id = static_cast<OruId>(i);
    o.height = 25.0;
    o.coverage_radius = 350.0;
    o.fronthaul_capacity = 10e9;
    o.fronthaul_length = 2000.0;
    r.read(item, "x", path, o.x);
    r.read(item, "y", path, o.y);
    r.read(item, "height", path, o.height);
    r.read(item, "radius", path, o.coverage_radius);
    r.read(item, "fronthaul_capacity", path, o.fronthaul_capacity);
    r.read(item, "fronthaul_length", path, o.fronthaul_length);
    orus.push_back(o);
  }
}

void read_auction(Reader& r, const YAML::Node& n, AuctionSection& a)
{
  r.check_keys(n, "auction", {"tenants", "total_rbs", "reserve_price", "quantity", "price", "vodus"});
  r.read(n, "tenants", "auction", a.tenants);
  r.read(n, "total_rbs", "auction", a.total_rbs);
  r.read(n, "reserve_price", "auction", a.reserve_price);
  r.read_range(n, "quantity", "auction", a.quantity_min, a.quantity_max);
  r.read_range(n, "price", "auction", a.price_min, a.price_max);
  r.read(n, "vodus", "auction", a.vodus);
}

void read_services(Reader& r, const YAML::Node& n, std::vector<slicing::Service>& services)
{
  if (!n.IsSequence()) {
    throw ConfigError("services: expected a list", line_of(n));
  }
  services.clear();
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string path = "services[" + std::to_string(i) + "]";
    const auto item = n[i];
    r.check_keys(item, path, {"name", "delay_budget_ms", "packet_bytes", "arrival_rate"});
    r.lines[path] = line_of(item);
    slicing::Service s;
    s.id = static_cast<ServiceId>(i);
    s.name = "service-" + std::to_string(i);
    double budget_ms = 100.0;
    r.read(item, "name", path, s.name);
    r.read(item, "delay_budget_ms", path, budget_ms);
    s.delay_budget_s = budget_ms * 1e-3;
    r.read_range(item, "packet_bytes", path, s.packet_min_bytes, s.packet_max_bytes);
    r.read(item, "arrival_rate", path, s.arrival_rate);
    services.push_back(s);
  }
}

void read_channel(Reader& r, const YAML::Node& n, ChannelSection& ch)
{
  r.check_keys(n, "channel",
               {"numerology", "path_loss_exponent", "error_variance", "tx_power_w", "noise_power_w", "path_loss",
                "propagation_speed"});
  r.read(n, "numerology", "channel", ch.numerology);
  r.read(n, "path_loss_exponent", "channel", ch.params.path_loss_exponent);
  r.read(n, "error_variance", "channel", ch.params.error_variance);
  r.read(n, "tx_power_w", "channel", ch.params.tx_power_w);
  r.read(n, "noise_power_w", "channel", ch.params.noise_power_w);
  r.read_enum(n, "path_loss", "channel", kPathLoss, ch.params.mode);
  r.read(n, "propagation_speed", "channel", ch.propagation_speed);
}

void read_rewards(Reader& r, const YAML::Node& n, RewardSection& rw)
{
  r.check_keys(n, "rewards", {"mode", "phi_dis", "max_rbs_per_flow", "weights"});
  r.read_enum(n, "mode", "rewards", kRewardModes, rw.mode);
  r.read(n, "phi_dis", "rewards", rw.phi_dis);
  r.read(n, "max_rbs_per_flow", "rewards", rw.max_rbs_per_flow);
  if (const auto w = n["weights"]) {
    r.check_keys(w, "rewards.weights",
                 {"satisfaction", "fronthaul", "orthogonality", "coupling", "placement", "capacity"});
    auto& p = rw.penalties;
    r.read(w, "satisfaction", "rewards.weights", p.satisfaction_weight);
    r.read(w, "fronthaul", "rewards.weights", p.fronthaul);
    r.read(w, "orthogonality", "rewards.weights", p.orthogonality);
    r.read(w, "coupling", "rewards.weights", p.coupling);
    r.read(w, "placement", "rewards.weights", p.placement);
    r.read(w, "capacity", "rewards.weights", p.capacity);
  }
}

void read_rl(Reader& r, const YAML::Node& n, RlSection& rl)
{
  r.check_keys(n, "rl",
               {"layers", "learning_rate", "gamma", "replay_capacity", "priority_exponent", "batch_size",
                "target_sync", "learning_starts", "updates_per_tick", "n_step", "epsilon", "optimizer", "shared_network"});
  r.read(n, "layers", "rl", rl.layers);
  r.read(n, "learning_rate", "rl", rl.learning_rate);
  r.read(n, "gamma", "rl", rl.gamma);
  r.read(n, "replay_capacity", "rl", rl.replay_capacity);
  r.read(n, "priority_exponent", "rl", rl.priority_exponent);
  r.read(n, "batch_size", "rl", rl.batch_size);
  r.read(n, "target_sync", "rl", rl.target_sync);
  r.read(n, "learning_starts", "rl", rl.learning_starts);
  r.read(n, "updates_per_tick", "rl", rl.updates_per_tick);
  r.read(n, "n_step", "rl", rl.n_step);
  if (const auto e = n["epsilon"]) {
    r.check_keys(e, "rl.epsilon", {"start", "end", "fraction", "actor_base"});
    r.read(e, "start", "rl.epsilon", rl.epsilon_start);
    r.read(e, "end", "rl.epsilon", rl.epsilon_end);
    r.read(e, "fraction", "rl.epsilon", rl.epsilon_fraction);
    r.read(e, "actor_base", "rl.epsilon", rl.actor_epsilon_base);
  }
  r.read_enum(n, "optimizer", "rl", kOptimizers, rl.optimizer);
  r.read(n, "shared_network", "rl", rl.shared_network);
}

}  // namespace

void validate(const ScenarioConfig& config)
{
  validate_impl(config, nullptr);
}

ScenarioConfig parse_config(std::string_view yaml_text)
{
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line + 1);
  }
  ScenarioConfig c = default_config();
  if (root.IsNull()) {
    validate_impl(c, nullptr);
    return c;
  }
  Reader r;
  r.check_keys(root, "",
               {"schema_version", "run", "fleet", "area", "orus", "mobility", "auction", "services", "buffers",
                "channel", "rewards", "rl"});
  r.read(root, "schema_version", "", c.schema_version);
  if (const auto n = root["run"]) {
    read_run(r, n, c.run);
  }
  if (const auto n = root["fleet"]) {
    read_fleet(r, n, c.fleet);
  }
  if (const auto n = root["area"]) {
    r.check_keys(n, "area", {"width", "height"});
    r.read(n, "width", "area", c.area.width);
    r.read(n, "height", "area", c.area.height);
  }
  if (const auto n = root["orus"]) {
    read_orus(r, n, c.orus);
  }
  if (const auto n = root["mobility"]) {
    r.check_keys(n, "mobility", {"dwell_rule"});
    r.read_enum(n, "dwell_rule", "mobility", kDwellRules, c.dwell_rule);
  }
  if (const auto n = root["auction"]) {
    read_auction(r, n, c.auction);
  }
  if (const auto n = root["services"]) {
    read_services(r, n, c.services);
  }
  if (const auto n = root["buffers"]) {
    r.check_keys(n, "buffers", {"capacity", "threshold"});
    r.read(n, "capacity", "buffers", c.buffer_capacity);
    r.read(n, "threshold", "buffers", c.buffer_threshold);
  }
  if (const auto n = root["channel"]) {
    read_channel(r, n, c.channel);
  }
  if (const auto n = root["rewards"]) {
    read_rewards(r, n, c.rewards);
  }
  if (const auto n = root["rl"]) {
    read_rl(r, n, c.rl);
  }
  validate_impl(c, &r.lines);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string config_to_yaml(const ScenarioConfig& c)
{
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << c.schema_version;

  out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << c.run.seed;
  out << YAML::Key << "steps" << YAML::Value << c.run.steps;
  out << YAML::Key << "tick_s" << YAML::Value << c.run.tick_s;
  out << YAML::Key << "loop2_period" << YAML::Value << c.run.loop2_period;
  out << YAML::Key << "actors" << YAML::Value << c.run.actors;
  out << YAML::Key << "deterministic" << YAML::Value << c.run.deterministic;
  out << YAML::Key << "actor_sync_period" << YAML::Value << c.run.actor_sync_period;
  out << YAML::Key << "write_assignments" << YAML::Value << c.run.write_assignments;
  out << YAML::EndMap;

  const auto range = [&out](const char* key, auto lo, auto hi) {
    out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << lo << hi << YAML::EndSeq;
  };

  out << YAML::Key << "fleet" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "flying" << YAML::Value << c.fleet.flying;
  out << YAML::Key << "ground" << YAML::Value << c.fleet.ground;
  range("flying_speed", c.fleet.flying_speed_min, c.fleet.flying_speed_max);
  range("flying_height", c.fleet.flying_height_min, c.fleet.flying_height_max);
  range("ground_speed", c.fleet.ground_speed_min, c.fleet.ground_speed_max);
  out << YAML::Key << "heading_sigma" << YAML::Value << c.fleet.heading_sigma;
  range("services_per_car", c.fleet.services_per_car_min, c.fleet.services_per_car_max);
  if (!c.fleet.trace_file.empty()) {
    out << YAML::Key << "trace_file" << YAML::Value << c.fleet.trace_file;
  }
  out << YAML::EndMap;

  out << YAML::Key << "area" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "width" << YAML::Value << c.area.width;
  out << YAML::Key << "height" << YAML::Value << c.area.height;
  out << YAML::EndMap;

  out << YAML::Key << "orus" << YAML::Value << YAML::BeginSeq;
  for (const auto& o : c.orus) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "x" << YAML::Value << o.x;
    out << YAML::Key << "y" << YAML::Value << o.y;
    out << YAML::Key << "height" << YAML::Value << o.height;
    out << YAML::Key << "radius" << YAML::Value << o.coverage_radius;
    out << YAML::Key << "fronthaul_capacity" << YAML::Value << o.fronthaul_capacity;
    out << YAML::Key << "fronthaul_length" << YAML::Value << o.fronthaul_length;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "mobility" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dwell_rule" << YAML::Value << name_of(kDwellRules, c.dwell_rule);
  out << YAML::EndMap;

  out << YAML::Key << "auction" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tenants" << YAML::Value << c.auction.tenants;
  out << YAML::Key << "total_rbs" << YAML::Value << c.auction.total_rbs;
  out << YAML::Key << "reserve_price" << YAML::Value << c.auction.reserve_price;
  range("quantity", c.auction.quantity_min, c.auction.quantity_max);
  range("price", c.auction.price_min, c.auction.price_max);
  out << YAML::Key << "vodus" << YAML::Value << c.auction.vodus;
  out << YAML::EndMap;

  out << YAML::Key << "services" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : c.services) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << s.name;
    out << YAML::Key << "delay_budget_ms" << YAML::Value << s.delay_budget_s * 1e3;
    range("packet_bytes", s.packet_min_bytes, s.packet_max_bytes);
    out << YAML::Key << "arrival_rate" << YAML::Value << s.arrival_rate;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "buffers" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "capacity" << YAML::Value << c.buffer_capacity;
  out << YAML::Key << "threshold" << YAML::Value << c.buffer_threshold;
  out << YAML::EndMap;

  out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "numerology" << YAML::Value << c.channel.numerology;
  out << YAML::Key << "path_loss_exponent" << YAML::Value << c.channel.params.path_loss_exponent;
  out << YAML::Key << "error_variance" << YAML::Value << c.channel.params.error_variance;
  out << YAML::Key << "tx_power_w" << YAML::Value << c.channel.params.tx_power_w;
  out << YAML::Key << "noise_power_w" << YAML::Value << c.channel.params.noise_power_w;
  out << YAML::Key << "path_loss" << YAML::Value << name_of(kPathLoss, c.channel.params.mode);
  out << YAML::Key << "propagation_speed" << YAML::Value << c.channel.propagation_speed;
  out << YAML::EndMap;

  const auto& p = c.rewards.penalties;
  out << YAML::Key << "rewards" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << name_of(kRewardModes, c.rewards.mode);
  out << YAML::Key << "phi_dis" << YAML::Value << c.rewards.phi_dis;
  out << YAML::Key << "max_rbs_per_flow" << YAML::Value << c.rewards.max_rbs_per_flow;
  out << YAML::Key << "weights" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "satisfaction" << YAML::Value << p.satisfaction_weight;
  out << YAML::Key << "fronthaul" << YAML::Value << p.fronthaul;
  out << YAML::Key << "orthogonality" << YAML::Value << p.orthogonality;
  out << YAML::Key << "coupling" << YAML::Value << p.coupling;
  out << YAML::Key << "placement" << YAML::Value << p.placement;
  out << YAML::Key << "capacity" << YAML::Value << p.capacity;
  out << YAML::EndMap;
  out << YAML::EndMap;

  const auto& r = c.rl;
  out << YAML::Key << "rl" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "layers" << YAML::Value << YAML::Flow << r.layers;
  out << YAML::Key << "learning_rate" << YAML::Value << r.learning_rate;
  out << YAML::Key << "gamma" << YAML::Value << r.gamma;
  out << YAML::Key << "replay_capacity" << YAML::Value << r.replay_capacity;
  out << YAML::Key << "priority_exponent" << YAML::Value << r.priority_exponent;
  out << YAML::Key << "batch_size" << YAML::Value << r.batch_size;
  out << YAML::Key << "target_sync" << YAML::Value << r.target_sync;
  out << YAML::Key << "learning_starts" << YAML::Value << r.learning_starts;
  out << YAML::Key << "updates_per_tick" << YAML::Value << r.updates_per_tick;
  out << YAML::Key << "n_step" << YAML::Value << r.n_step;
  out << YAML::Key << "epsilon" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "start" << YAML::Value << r.epsilon_start;
  out << YAML::Key << "end" << YAML::Value << r.epsilon_end;
  out << YAML::Key << "fraction" << YAML::Value << r.epsilon_fraction;
  out << YAML::Key << "actor_base" << YAML::Value << r.actor_epsilon_base;
  out << YAML::EndMap;
  out << YAML::Key << "optimizer" << YAML::Value << name_of(kOptimizers, r.optimizer);
  out << YAML::Key << "shared_network" << YAML::Value << r.shared_network;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace ranslice::sim
