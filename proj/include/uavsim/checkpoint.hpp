#pragma once

#include <string>
#include <vector>

#include "uavsim/policy.hpp"

namespace uavsim {

struct Checkpoint {
  PolicyParams params;
  std::string config_hash;  // provenance of the training run
};

// Versioned text serialization; round-trips doubles exactly.
void save_checkpoint(const std::string& path, const PolicyParams& params,
                     const std::string& config_hash);

// Throws IoError on missing/corrupt files or version mismatch.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace uavsim
