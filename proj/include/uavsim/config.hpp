#pragma once

#include <string>
#include <vector>

#include "uavsim/env.hpp"
#include "uavsim/ppo.hpp"
#include "uavsim/types.hpp"

namespace uavsim {

// Everything a run needs, addressable by flat key names. The key set is
// closed: unknown keys are a hard error so configs cannot silently drift.
struct SimConfig {
  NetworkConfig net;
  EnvOptions env;
  PpoConfig ppo;

  void validate() const;
};

// All recognized keys in canonical order.
const std::vector<std::string>& config_keys();

// Set / get one field by key. Throws ConfigError on unknown keys or
// unparsable values.
void config_set(SimConfig& cfg, const std::string& key,
                const std::string& value);
std::string config_get(const SimConfig& cfg, const std::string& key);

// Plain-text `key = value` serialization, one key per line, canonical order.
std::string config_serialize(const SimConfig& cfg);

// Parse `key = value` lines; '#' starts a comment. Throws ConfigError.
SimConfig config_parse(const std::string& text);
SimConfig config_load(const std::string& path);
void config_save(const SimConfig& cfg, const std::string& path);

// FNV-1a content hash of the canonical serialization.
std::uint64_t fnv1a64(const std::string& data);
std::string config_hash(const SimConfig& cfg);

}  // namespace uavsim
