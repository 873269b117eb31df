#include "uavsim.h"

#include <cstring>
#include <string>

#include "uavsim/config.hpp"
#include "uavsim/env.hpp"
#include "uavsim/session.hpp"

using uavsim::ConfigError;
using uavsim::IoError;
using uavsim::SimConfig;

struct uavsim_config_t {
  SimConfig cfg;
};

struct uavsim_env_t {
  uavsim::Env env;
};

namespace {

thread_local std::string g_last_error;

uavsim_status fail(uavsim_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps core exceptions onto status codes; the template wraps every entry
// point so no exception crosses the C boundary.
template <typename Fn>
uavsim_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    return fail(UAVSIM_ERR_BAD_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(UAVSIM_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(UAVSIM_ERR_INVALID_ARG, e.what());
  } catch (const std::domain_error& e) {
    return fail(UAVSIM_ERR_INVALID_ARG, e.what());
  } catch (const std::logic_error& e) {
    return fail(UAVSIM_ERR_BAD_STATE, e.what());
  } catch (const std::exception& e) {
    return fail(UAVSIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(UAVSIM_ERR_INTERNAL, "unknown error");
  }
}

uavsim_status copy_out(const std::string& value, char* buf, size_t buf_size) {
  if (buf == nullptr || buf_size == 0)
    return fail(UAVSIM_ERR_INVALID_ARG, "output buffer is null or empty");
  if (value.size() + 1 > buf_size)
    return fail(UAVSIM_ERR_INVALID_ARG,
                "output buffer too small (need " +
                    std::to_string(value.size() + 1) + " bytes)");
  std::memcpy(buf, value.c_str(), value.size() + 1);
  return UAVSIM_OK;
}

std::vector<std::uint64_t> seed_vector(const uint64_t* seeds, size_t n) {
  return {seeds, seeds + n};
}

}  // namespace

extern "C" {

const char* uavsim_version(void) { return "1.0.0"; }

const char* uavsim_status_name(uavsim_status status) {
  switch (status) {
    case UAVSIM_OK: return "ok";
    case UAVSIM_ERR_INVALID_ARG: return "invalid_argument";
    case UAVSIM_ERR_BAD_CONFIG: return "bad_config";
    case UAVSIM_ERR_IO: return "io_error";
    case UAVSIM_ERR_BAD_STATE: return "bad_state";
    case UAVSIM_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* uavsim_last_error(void) { return g_last_error.c_str(); }

uavsim_status uavsim_config_create(uavsim_config_t** out) {
  if (!out) return fail(UAVSIM_ERR_INVALID_ARG, "out is null");
  return guarded([&] {
    *out = new uavsim_config_t{};
    return UAVSIM_OK;
  });
}

uavsim_status uavsim_config_load(const char* path, uavsim_config_t** out) {
  if (!path || !out) return fail(UAVSIM_ERR_INVALID_ARG, "path/out is null");
  return guarded([&] {
    auto cfg = uavsim::config_load(path);
    *out = new uavsim_config_t{std::move(cfg)};
    return UAVSIM_OK;
  });
}

uavsim_status uavsim_config_set(uavsim_config_t* cfg, const char* key,
                                const char* value) {
  if (!cfg || !key || !value)
    return fail(UAVSIM_ERR_INVALID_ARG, "cfg/key/value is null");
  return guarded([&] {
    uavsim::config_set(cfg->cfg, key, value);
    return UAVSIM_OK;
  });
}

uavsim_status uavsim_config_get(const uavsim_config_t* cfg, const char* key,
                                char* buf, size_t buf_size) {
  if (!cfg || !key) return fail(UAVSIM_ERR_INVALID_ARG, "cfg/key is null");
  return guarded([&] {
    return copy_out(uavsim::config_get(cfg->cfg, key), buf, buf_size);
  });
}

uavsim_status uavsim_config_hash(const uavsim_config_t* cfg, char* buf,
                                 size_t buf_size) {
  if (!cfg) return fail(UAVSIM_ERR_INVALID_ARG, "cfg is null");
  return guarded(
      [&] { return copy_out(uavsim::config_hash(cfg->cfg), buf, buf_size); });
}

uavsim_status uavsim_config_save(const uavsim_config_t* cfg,
                                 const char* path) {
  if (!cfg || !path) return fail(UAVSIM_ERR_INVALID_ARG, "cfg/path is null");
  return guarded([&] {
    uavsim::config_save(cfg->cfg, path);
    return UAVSIM_OK;
  });
}

void uavsim_config_destroy(uavsim_config_t* cfg) { delete cfg; }

uavsim_status uavsim_env_create(const uavsim_config_t* cfg,
                                uavsim_env_t** out) {
  if (!cfg || !out) return fail(UAVSIM_ERR_INVALID_ARG, "cfg/out is null");
  return guarded([&] {
    cfg->cfg.validate();
    *out = new uavsim_env_t{uavsim::Env(cfg->cfg.net, cfg->cfg.env)};
    return UAVSIM_OK;
  });
}

uavsim_status uavsim_env_state_size(const uavsim_env_t* env, size_t* out) {
  if (!env || !out) return fail(UAVSIM_ERR_INVALID_ARG, "env/out is null");
  *out = static_cast<size_t>(env->env.state_size());
  return UAVSIM_OK;
}

uavsim_status uavsim_env_action_size(const uavsim_env_t* env, size_t* out) {
  if (!env || !out) return fail(UAVSIM_ERR_INVALID_ARG, "env/out is null");
  *out = static_cast<size_t>(env->env.action_size());
  return UAVSIM_OK;
}

uavsim_status uavsim_env_reset(uavsim_env_t* env, uint64_t seed, double* state,
                               size_t state_len) {
  if (!env || !state) return fail(UAVSIM_ERR_INVALID_ARG, "env/state is null");
  return guarded([&] {
    if (state_len < static_cast<size_t>(env->env.state_size()))
      return fail(UAVSIM_ERR_INVALID_ARG, "state buffer too small");
    const auto s = env->env.reset(seed);
    std::memcpy(state, s.data(), s.size() * sizeof(double));
    return UAVSIM_OK;
  });
}

uavsim_status uavsim_env_step(uavsim_env_t* env, const double* action,
                              size_t action_len, double* next_state,
                              size_t state_len, double* reward, int* done) {
  if (!env || !action || !next_state || !reward || !done)
    return fail(UAVSIM_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    if (action_len != static_cast<size_t>(env->env.action_size()))
      return fail(UAVSIM_ERR_INVALID_ARG, "action length mismatch");
    if (state_len < static_cast<size_t>(env->env.state_size()))
      return fail(UAVSIM_ERR_INVALID_ARG, "state buffer too small");
    uavsim::EnvAction a;
    a.a.assign(action, action + action_len);
    const auto out = env->env.step(a);
    std::memcpy(next_state, out.next_state.data(),
                out.next_state.size() * sizeof(double));
    *reward = out.reward;
    *done = out.done ? 1 : 0;
    return UAVSIM_OK;
  });
}

void uavsim_env_destroy(uavsim_env_t* env) { delete env; }

uavsim_status uavsim_train(const uavsim_config_t* cfg, uint64_t seed,
                           const char* out_dir) {
  if (!cfg || !out_dir)
    return fail(UAVSIM_ERR_INVALID_ARG, "cfg/out_dir is null");
  return guarded([&] {
    uavsim::train_to_dir(cfg->cfg, seed, out_dir);
    return UAVSIM_OK;
  });
}

uavsim_status uavsim_run_scheme(const uavsim_config_t* cfg, const char* scheme,
                                const char* checkpoint_path,
                                const uint64_t* seeds, size_t n_seeds,
                                const char* out_dir) {
  if (!cfg || !scheme || !out_dir || (!seeds && n_seeds > 0))
    return fail(UAVSIM_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    uavsim::run_scheme_to_dir(cfg->cfg, uavsim::scheme_from_string(scheme),
                              checkpoint_path ? checkpoint_path : "",
                              seed_vector(seeds, n_seeds), out_dir);
    return UAVSIM_OK;
  });
}

uavsim_status uavsim_sweep_uavs(const uavsim_config_t* cfg, const char* scheme,
                                const char* checkpoint_path,
                                const int* uav_counts, size_t n_counts,
                                const uint64_t* seeds, size_t n_seeds,
                                const char* out_dir) {
  if (!cfg || !scheme || !out_dir || !uav_counts || (!seeds && n_seeds > 0))
    return fail(UAVSIM_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    uavsim::sweep_to_dir(cfg->cfg, uavsim::scheme_from_string(scheme),
                         checkpoint_path ? checkpoint_path : "",
                         std::vector<int>(uav_counts, uav_counts + n_counts),
                         seed_vector(seeds, n_seeds), out_dir);
    return UAVSIM_OK;
  });
}

uavsim_status uavsim_report(const char* const* metrics_paths, size_t n_paths,
                            const char* out_path) {
  if (!metrics_paths || !out_path)
    return fail(UAVSIM_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    std::vector<std::string> paths;
    paths.reserve(n_paths);
    for (size_t i = 0; i < n_paths; ++i) {
      if (!metrics_paths[i])
        return fail(UAVSIM_ERR_INVALID_ARG, "null metrics path");
      paths.emplace_back(metrics_paths[i]);
    }
    uavsim::report_to_file(paths, out_path);
    return UAVSIM_OK;
  });
}

}  // extern "C"
