#include "uavsim/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace uavsim {

namespace {

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": '" + s + "'");
  }
}

long parse_long(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": '" + s + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + s + "'");
}

struct Field {
  std::function<std::string(const SimConfig&)> get;
  std::function<void(SimConfig&, const std::string&)> set;
};

using FieldMap = std::vector<std::pair<std::string, Field>>;

#define NUM_FIELD(key, expr)                                                \
  {key,                                                                     \
   {[](const SimConfig& c) { return format_double(c.expr); },               \
    [](SimConfig& c, const std::string& v) { c.expr = parse_double(key, v); }}}

#define INT_FIELD(key, expr)                                                  \
  {key,                                                                       \
   {[](const SimConfig& c) { return std::to_string(c.expr); },                \
    [](SimConfig& c, const std::string& v) {                                  \
      c.expr = static_cast<int>(parse_long(key, v));                          \
    }}}

#define BOOL_FIELD(key, expr)                                           \
  {key,                                                                  \
   {[](const SimConfig& c) { return c.expr ? "true" : "false"; },        \
    [](SimConfig& c, const std::string& v) { c.expr = parse_bool(key, v); }}}

const FieldMap& fields() {
  static const FieldMap table = {
      // network
      NUM_FIELD("bandwidth_total", net.bandwidth_total),
      NUM_FIELD("carrier_absorption", net.carrier_absorption),
      NUM_FIELD("ref_gain_db", net.ref_gain_db),
      NUM_FIELD("noise_psd_dbm_hz", net.noise_psd_dbm_hz),
      NUM_FIELD("p_max", net.p_max),
      NUM_FIELD("r_min", net.r_min),
      NUM_FIELD("area_side", net.area_side),
      NUM_FIELD("uav_altitude", net.uav_altitude),
      NUM_FIELD("v_max", net.v_max),
      NUM_FIELD("d_min", net.d_min),
      NUM_FIELD("slot_duration", net.slot_duration),
      INT_FIELD("n_slots", net.n_slots),
      INT_FIELD("n_uavs", net.n_uavs),
      INT_FIELD("n_gus", net.n_gus),
      {"interference_mode",
       {[](const SimConfig& c) { return to_string(c.net.interference_mode); },
        [](SimConfig& c, const std::string& v) {
          c.net.interference_mode = interference_mode_from_string(v);
        }}},
      // environment
      NUM_FIELD("reward_scale", env.reward_scale),
      BOOL_FIELD("terminate_on_violation", env.terminate_on_violation),
      {"power_policy",
       {[](const SimConfig& c) { return to_string(c.env.power_policy); },
        [](SimConfig& c, const std::string& v) {
          c.env.power_policy = power_policy_from_string(v);
        }}},
      NUM_FIELD("sca_tol", env.sca.tol),
      INT_FIELD("sca_max_outer", env.sca.max_outer),
      INT_FIELD("bkmc_max_iters", env.bkmc_max_iters),
      // learning
      NUM_FIELD("clip_epsilon", ppo.clip_epsilon),
      NUM_FIELD("discount", ppo.discount),
      NUM_FIELD("gae_lambda", ppo.gae_lambda),
      NUM_FIELD("learning_rate", ppo.learning_rate),
      INT_FIELD("minibatch_size", ppo.minibatch_size),
      INT_FIELD("epochs", ppo.epochs),
      {"episodes",
       {[](const SimConfig& c) { return std::to_string(c.ppo.episodes); },
        [](SimConfig& c, const std::string& v) {
          c.ppo.episodes = parse_long("episodes", v);
        }}},
      INT_FIELD("actors", ppo.actors),
      NUM_FIELD("value_loss_weight", ppo.value_loss_weight),
      NUM_FIELD("entropy_weight", ppo.entropy_weight),
      INT_FIELD("hidden_units", ppo.hidden_units),
      BOOL_FIELD("normalize_advantages", ppo.normalize_advantages),
      {"optimizer",
       {[](const SimConfig& c) {
          return c.ppo.optimizer == PpoConfig::Optimizer::adam ? "adam" : "sgd";
        },
        [](SimConfig& c, const std::string& v) {
          if (v == "sgd")
            c.ppo.optimizer = PpoConfig::Optimizer::sgd;
          else if (v == "adam")
            c.ppo.optimizer = PpoConfig::Optimizer::adam;
          else
            throw ConfigError("unknown optimizer: " + v);
        }}},
  };
  return table;
}

#undef NUM_FIELD
#undef INT_FIELD
#undef BOOL_FIELD

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void SimConfig::validate() const {
  net.validate();
  ppo.validate();
  if (!(env.reward_scale > 0.0)) throw ConfigError("reward_scale must be > 0");
  if (!(env.sca.tol > 0.0)) throw ConfigError("sca_tol must be > 0");
  if (env.sca.max_outer < 1) throw ConfigError("sca_max_outer must be >= 1");
  if (env.bkmc_max_iters < 1) throw ConfigError("bkmc_max_iters must be >= 1");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, field] : fields()) k.push_back(name);
    return k;
  }();
  return keys;
}

void config_set(SimConfig& cfg, const std::string& key,
                const std::string& value) {
  for (const auto& [name, field] : fields()) {
    if (name == key) {
      field.set(cfg, value);
      return;
    }
  }
  throw ConfigError("unknown config key: '" + key + "'");
}

std::string config_get(const SimConfig& cfg, const std::string& key) {
  for (const auto& [name, field] : fields())
    if (name == key) return field.get(cfg);
  throw ConfigError("unknown config key: '" + key + "'");
}

std::string config_serialize(const SimConfig& cfg) {
  std::ostringstream out;
  for (const auto& [name, field] : fields())
    out << name << " = " << field.get(cfg) << "\n";
  return out.str();
}

SimConfig config_parse(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) +
                        ": empty key or value");
    config_set(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

SimConfig config_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return config_parse(text.str());
}

void config_save(const SimConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file: " + path);
  out << config_serialize(cfg);
  if (!out) throw IoError("failed writing config file: " + path);
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const SimConfig& cfg) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(config_serialize(cfg))));
  return buf;
}

}  // namespace uavsim
