/*
 * C interface to the UAV THz downlink simulator. All functionality is
 * reachable through opaque handles and status codes so the library can be
 * driven from C, scripting FFIs, or the bundled CLI.
 *
 * Conventions:
 *   - Every fallible call returns uavsim_status; UAVSIM_OK is 0.
 *   - On failure, uavsim_last_error() returns a message for the calling
 *     thread, valid until the next failing call on that thread.
 *   - Handles are created and destroyed by this library only.
 */
#ifndef UAVSIM_H
#define UAVSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UAVSIM_API __declspec(dllexport)
#else
#define UAVSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavsim_status {
  UAVSIM_OK = 0,
  UAVSIM_ERR_INVALID_ARG = 1,
  UAVSIM_ERR_BAD_CONFIG = 2,
  UAVSIM_ERR_IO = 3,
  UAVSIM_ERR_BAD_STATE = 4,
  UAVSIM_ERR_INTERNAL = 5
} uavsim_status;

typedef struct uavsim_config_t uavsim_config_t;
typedef struct uavsim_env_t uavsim_env_t;

UAVSIM_API const char *uavsim_version(void);
UAVSIM_API const char *uavsim_status_name(uavsim_status status);
UAVSIM_API const char *uavsim_last_error(void);

/* configuration ---------------------------------------------------------- */

/* Create a configuration populated with the built-in defaults. */
UAVSIM_API uavsim_status uavsim_config_create(uavsim_config_t **out);

/* Load a `key = value` configuration file. Unknown keys are an error. */
UAVSIM_API uavsim_status uavsim_config_load(const char *path,
                                            uavsim_config_t **out);

UAVSIM_API uavsim_status uavsim_config_set(uavsim_config_t *cfg,
                                           const char *key, const char *value);

/* Copies the value into buf (NUL-terminated); fails if buf is too small. */
UAVSIM_API uavsim_status uavsim_config_get(const uavsim_config_t *cfg,
                                           const char *key, char *buf,
                                           size_t buf_size);

/* Content hash of the full configuration, e.g. "fnv1a64:1234abcd...". */
UAVSIM_API uavsim_status uavsim_config_hash(const uavsim_config_t *cfg,
                                            char *buf, size_t buf_size);

UAVSIM_API uavsim_status uavsim_config_save(const uavsim_config_t *cfg,
                                            const char *path);

UAVSIM_API void uavsim_config_destroy(uavsim_config_t *cfg);

/* environment ------------------------------------------------------------ */

UAVSIM_API uavsim_status uavsim_env_create(const uavsim_config_t *cfg,
                                           uavsim_env_t **out);

UAVSIM_API uavsim_status uavsim_env_state_size(const uavsim_env_t *env,
                                               size_t *out);
UAVSIM_API uavsim_status uavsim_env_action_size(const uavsim_env_t *env,
                                                size_t *out);

/* Starts an episode; writes the initial observation into state. */
UAVSIM_API uavsim_status uavsim_env_reset(uavsim_env_t *env, uint64_t seed,
                                          double *state, size_t state_len);

/* Advances one slot. action holds (speed, turn) per UAV. Fails with
 * UAVSIM_ERR_BAD_STATE when the episode is already finished. */
UAVSIM_API uavsim_status uavsim_env_step(uavsim_env_t *env,
                                         const double *action,
                                         size_t action_len, double *next_state,
                                         size_t state_len, double *reward,
                                         int *done);

UAVSIM_API void uavsim_env_destroy(uavsim_env_t *env);

/* experiments ------------------------------------------------------------ */

/* Trains a trajectory policy; writes checkpoint.txt, reward_curve.csv and
 * manifest.json into out_dir. */
UAVSIM_API uavsim_status uavsim_train(const uavsim_config_t *cfg,
                                      uint64_t seed, const char *out_dir);

/* Evaluates one benchmark scheme ("su-rp", "ou-rp", "su-pp", "ou-pp") over
 * the given seeds; writes metrics.csv, traces.csv and manifest.json into
 * out_dir. checkpoint_path may be NULL for the static-UAV schemes. */
UAVSIM_API uavsim_status uavsim_run_scheme(const uavsim_config_t *cfg,
                                           const char *scheme,
                                           const char *checkpoint_path,
                                           const uint64_t *seeds,
                                           size_t n_seeds, const char *out_dir);

/* Repeats run_scheme for each UAV count with matched seeds; writes one
 * subdirectory per count (k2/, k3/, ...) under out_dir. */
UAVSIM_API uavsim_status uavsim_sweep_uavs(const uavsim_config_t *cfg,
                                           const char *scheme,
                                           const char *checkpoint_path,
                                           const int *uav_counts,
                                           size_t n_counts,
                                           const uint64_t *seeds,
                                           size_t n_seeds, const char *out_dir);

/* Aggregates metrics CSVs into a summary table (mean/std per scheme and
 * metric) written to out_path. */
UAVSIM_API uavsim_status uavsim_report(const char *const *metrics_paths,
                                       size_t n_paths, const char *out_path);

#ifdef __cplusplus
}
#endif

#endif /* UAVSIM_H */
