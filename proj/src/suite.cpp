#include "swarmforage/suite.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace swarmforage {

std::vector<ExperimentSpec> Suite::expand() const {
  if (experiments.empty()) return default_suite(base, replicates, seed_base);
  std::vector<ExperimentSpec> specs;
  for (const ExperimentEntry& e : experiments) {
    specs.push_back({e.name, e.beta_send, e.beta_receive, e.controller, replicates, base, seed_base});
  }
  return specs;
}

Suite desk_scale_suite() { return Suite{}; }

Suite paper_scale_suite() {
  Suite s;
  s.base = paper_scale_config();
  s.replicates = 50;
  return s;
}

namespace {

std::string where(const YAML::Node& node) {
  const YAML::Mark m = node.Mark();
  if (m.line < 0) return "";
  return " (line " + std::to_string(m.line + 1) + ")";
}

void require_keys(const YAML::Node& map, std::string_view section, const std::set<std::string>& allowed) {
  if (!map.IsMap()) throw ConfigError(std::string(section) + " must be a mapping" + where(map));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(section) + where(kv.first));
    }
  }
}

template <typename T>
T scalar(const YAML::Node& node, std::string_view key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("bad value for '" + std::string(key) + "'" + where(node));
  }
}

template <typename T>
void read(const YAML::Node& map, const char* key, T& out) {
  if (const YAML::Node n = map[key]) out = scalar<T>(n, key);
}

double read_probability(const YAML::Node& node, std::string_view key) {
  const auto p = parse_probability(scalar<std::string>(node, key));
  if (!p) throw ConfigError("'" + std::string(key) + "' must be low, medium, high or a number in [0, 1]" + where(node));
  return *p;
}

Rect read_rect(const YAML::Node& node, std::string_view key) {
  if (node.IsSequence() && node.size() == 4) {
    return {scalar<int>(node[0], key), scalar<int>(node[1], key), scalar<int>(node[2], key),
            scalar<int>(node[3], key)};
  }
  if (node.IsMap()) {
    require_keys(node, key, {"x", "y", "width", "height"});
    Rect r;
    read(node, "x", r.x);
    read(node, "y", r.y);
    read(node, "width", r.width);
    read(node, "height", r.height);
    return r;
  }
  throw ConfigError("'" + std::string(key) + "' must be [x, y, width, height] or a mapping" + where(node));
}

void read_simulation(const YAML::Node& sim, SimConfig& cfg) {
  require_keys(sim, "simulation",
               {"n_robots", "ticks", "metrics_interval", "rho", "decay_form", "empty_observation", "deposit",
                "comm_radius"});
  read(sim, "n_robots", cfg.n_robots);
  read(sim, "ticks", cfg.ticks);
  read(sim, "metrics_interval", cfg.metrics_interval);
  read(sim, "rho", cfg.pheromone.rho);
  read(sim, "deposit", cfg.pheromone.deposit);
  read(sim, "comm_radius", cfg.comm.radius);
  if (const YAML::Node n = sim["decay_form"]) {
    const auto v = scalar<std::string>(n, "decay_form");
    if (v == "rate") cfg.pheromone.form = DecayForm::Rate;
    else if (v == "literal") cfg.pheromone.form = DecayForm::Literal;
    else throw ConfigError("decay_form must be rate or literal" + where(n));
  }
  if (const YAML::Node n = sim["empty_observation"]) {
    const auto v = scalar<std::string>(n, "empty_observation");
    if (v == "refresh") cfg.pheromone.empty = EmptyObservation::Refresh;
    else if (v == "reset") cfg.pheromone.empty = EmptyObservation::Reset;
    else throw ConfigError("empty_observation must be refresh or reset" + where(n));
  }
}

void read_arena(const YAML::Node& arena, ArenaConfig& cfg) {
  require_keys(arena, "arena", {"width", "height", "nest", "source", "blocks", "sense_radius"});
  read(arena, "width", cfg.width);
  read(arena, "height", cfg.height);
  read(arena, "blocks", cfg.block_count);
  read(arena, "sense_radius", cfg.sense_radius);
  if (const YAML::Node n = arena["nest"]) cfg.nest = read_rect(n, "nest");
  if (const YAML::Node n = arena["source"]) cfg.source = read_rect(n, "source");
}

ExperimentEntry read_experiment(const YAML::Node& node) {
  require_keys(node, "experiment", {"name", "controller", "beta_send", "beta_receive"});
  ExperimentEntry e;
  if (!node["name"]) throw ConfigError("experiment without a name" + where(node));
  e.name = scalar<std::string>(node["name"], "name");
  if (const YAML::Node n = node["controller"]) {
    const auto c = parse_controller(scalar<std::string>(n, "controller"));
    if (!c) throw ConfigError("controller must be utility, rcs or crw" + where(n));
    e.controller = *c;
  }
  if (e.controller == Controller::RandomSelection) e.beta_send = e.beta_receive = probability(Level::High);
  if (const YAML::Node n = node["beta_send"]) e.beta_send = read_probability(n, "beta_send");
  if (const YAML::Node n = node["beta_receive"]) e.beta_receive = read_probability(n, "beta_receive");
  if (e.controller == Controller::RandomWalk) e.beta_send = e.beta_receive = 0.0;
  return e;
}

}  // namespace

Suite parse_suite(std::string_view text, bool paper_scale) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("suite file is not valid YAML: ") + e.what());
  }
  if (root.IsNull()) return paper_scale ? paper_scale_suite() : desk_scale_suite();
  require_keys(root, "suite", {"preset", "replicates", "seed_base", "threads", "simulation", "arena", "experiments"});

  if (const YAML::Node n = root["preset"]) {
    const auto v = scalar<std::string>(n, "preset");
    if (v == "paper") paper_scale = true;
    else if (v != "desk") throw ConfigError("preset must be desk or paper" + where(n));
  }
  Suite suite = paper_scale ? paper_scale_suite() : desk_scale_suite();

  read(root, "replicates", suite.replicates);
  read(root, "seed_base", suite.seed_base);
  read(root, "threads", suite.threads);
  if (const YAML::Node n = root["simulation"]) read_simulation(n, suite.base);
  if (const YAML::Node n = root["arena"]) read_arena(n, suite.base.arena);
  if (const YAML::Node list = root["experiments"]) {
    if (!list.IsSequence()) throw ConfigError("experiments must be a list" + where(list));
    std::set<std::string> names;
    for (const YAML::Node& item : list) {
      ExperimentEntry e = read_experiment(item);
      if (!names.insert(e.name).second) throw ConfigError("duplicate experiment name '" + e.name + "'");
      suite.experiments.push_back(std::move(e));
    }
  }
  if (suite.replicates <= 0) throw ConfigError("replicates must be positive");
  return suite;
}

Suite load_suite(const std::filesystem::path& path, bool paper_scale) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read suite file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_suite(text.str(), paper_scale);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace swarmforage
