#include "ranslice/rl/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ranslice::rl {

using nlohmann::json;

std::string rng_state(const Rng& rng)
{
  std::ostringstream out;
  out << rng;
  return out.str();
}

void restore_rng(Rng& rng, std::string_view state)
{
  std::istringstream in{std::string(state)};
  in >> rng;
  if (in.fail()) {
    throw CheckpointError("checkpoint: malformed RNG state");
  }
}

std::string checkpoints_to_json(const std::vector<Checkpoint>& checkpoints)
{
  json doc;
  doc["version"] = kCheckpointVersion;
  doc["learners"] = json::array();
  for (const auto& c : checkpoints) {
    doc["learners"].push_back({{"name", c.name},
                               {"layer_sizes", c.online.layer_sizes()},
                               {"online", c.online.parameters()},
                               {"target", c.target.parameters()},
                               {"train_steps", c.train_steps},
                               {"rng", c.rng_state}});
  }
  return doc.dump();
}

std::vector<Checkpoint> checkpoints_from_json(std::string_view text)
{
  std::vector<Checkpoint> out;
  try {
    const json doc = json::parse(text);
    if (doc.at("version").get<int>() != kCheckpointVersion) {
      throw CheckpointError("checkpoint: unsupported version " + doc.at("version").dump());
    }
    for (const auto& entry : doc.at("learners")) {
      Checkpoint c;
      c.name = entry.at("name").get<std::string>();
      const auto sizes = entry.at("layer_sizes").get<std::vector<int>>();
      c.online = QNetwork(sizes);
      c.target = QNetwork(sizes);
      const auto online = entry.at("online").get<std::vector<double>>();
      const auto target = entry.at("target").get<std::vector<double>>();
      if (online.size() != c.online.parameter_count() || target.size() != c.target.parameter_count()) {
        throw CheckpointError("checkpoint: parameter count does not match layer sizes");
      }
      c.online.parameters() = online;
      c.target.parameters() = target;
      c.train_steps = entry.at("train_steps").get<std::uint64_t>();
      c.rng_state = entry.at("rng").get<std::string>();
      out.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
  return out;
}

void save_checkpoints(const std::filesystem::path& path, const std::vector<Checkpoint>& checkpoints)
{
  std::ofstream out(path);
  if (!out) {
    throw CheckpointError("cannot write checkpoint " + path.string());
  }
  out << checkpoints_to_json(checkpoints) << '\n';
}

std::vector<Checkpoint> load_checkpoints(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw CheckpointError("cannot open checkpoint " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return checkpoints_from_json(buffer.str());
}

}  // namespace ranslice::rl
