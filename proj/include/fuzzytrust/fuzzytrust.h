/* C interface to the fuzzytrust library.
 *
 * Every function returning ft_status reports failures through the status code;
 * ft_last_error() then returns a message for the calling thread. Handles are
 * opaque and must be released with the matching destroy function.
 */
#ifndef FUZZYTRUST_H
#define FUZZYTRUST_H

#include <stddef.h>

#if defined(FUZZYTRUST_BUILDING_LIBRARY)
#define FT_API __attribute__((visibility("default")))
#else
#define FT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ft_status {
  FT_OK = 0,
  FT_ERR_INVALID_ARGUMENT = 1,
  FT_ERR_CONFIG = 2,
  FT_ERR_NONCONVERGENCE = 3,
  FT_ERR_UNDEFINED = 4,
  FT_ERR_IO = 5,
  FT_ERR_INTERNAL = 99
} ft_status;

/* Method bit flags; combine with | to request several methods in one run. */
enum {
  FT_METHOD_FUZZY = 1u,
  FT_METHOD_AVERAGE = 2u,
  FT_METHOD_BASELINE = 4u,
  FT_METHOD_ALL = 7u
};

typedef struct ft_config ft_config;
typedef struct ft_run ft_run;

typedef struct ft_summary {
  double mean_overall_trust;
  double mean_trust_a_requesters;
  double mean_trust_b_requesters;
  size_t undefined_campaigns;
  double mean_reputation_a;
  double mean_reputation_b;
  double reputation_separation;
  double reputation_overlap;
  size_t max_rank_iterations;
  double max_rank_residual;
} ft_summary;

FT_API const char* ft_version(void);
/* Message of the last failure on this thread; empty string if none. */
FT_API const char* ft_last_error(void);
FT_API const char* ft_status_name(ft_status status);

/* Configuration: built-in defaults, then file, then individual keys. */
FT_API ft_status ft_config_create(ft_config** out);
FT_API void ft_config_destroy(ft_config* cfg);
FT_API ft_status ft_config_load_file(ft_config* cfg, const char* path);
FT_API ft_status ft_config_set(ft_config* cfg, const char* key, const char* value);
/* Copies the value of `key` into buf (NUL-terminated). *needed receives the
 * required size including the terminator; FT_ERR_INVALID_ARGUMENT if buf is too small. */
FT_API ft_status ft_config_get(const ft_config* cfg, const char* key, char* buf, size_t buflen,
                               size_t* needed);
FT_API ft_status ft_config_validate(const ft_config* cfg);

/* Parses "all" or a comma-separated list of fuzzy, average, baseline. */
FT_API ft_status ft_parse_methods(const char* list, unsigned* mask);

/* Runs the configured scenario once per requested method (concurrently). */
FT_API ft_status ft_run_execute(const ft_config* cfg, unsigned method_mask, ft_run** out);
FT_API void ft_run_destroy(ft_run* run);
/* Writes overall_trust.csv, reputation.csv, summary.csv and manifest.json. */
FT_API ft_status ft_run_write(const ft_run* run, const char* out_dir);
FT_API ft_status ft_run_summary(const ft_run* run, unsigned method, ft_summary* out);
FT_API size_t ft_run_method_count(const ft_run* run);
/* Method flag and name of the i-th result, in run order. */
FT_API ft_status ft_run_method_at(const ft_run* run, size_t index, unsigned* method,
                                  const char** name);
/* Number of reputation snapshots (the initial state counts as interval 0). */
FT_API ft_status ft_run_snapshot_count(const ft_run* run, unsigned method, size_t* count);
/* Copies snapshot `interval` of `method` into out[0..members). */
FT_API ft_status ft_run_reputation(const ft_run* run, unsigned method, size_t interval,
                                   double* out, size_t members);

/* ToC from crisp QoC and ToP with the default fuzzy engine. */
FT_API ft_status ft_evaluate_toc(double qoc, double top, double* toc);
/* Same, with the fuzzy partitions and rules of a configuration. */
FT_API ft_status ft_config_evaluate_toc(const ft_config* cfg, double qoc, double top, double* toc);

/* Reward/penalty trust update with the default thresholds. */
FT_API ft_status ft_update_trust(double current, double toc, double re, double requester_rep,
                                 double* updated);
/* Reputation from an n x n row-major trust matrix (diagonal ignored), starting
 * from prev. out_rescaled and out_raw may be NULL; iterations may be NULL. */
FT_API ft_status ft_compute_reputation(size_t n, const double* trust, const double* prev,
                                       double tolerance, size_t max_iterations,
                                       double* out_rescaled, double* out_raw,
                                       size_t* iterations);

typedef void (*ft_check_callback)(const char* name, int passed, const char* detail, void* user);

/* Example-graph weights for the self-check, ordered t13 t14 t21 t24 t32 t34;
 * NULL selects the defaults. *all_passed is 1 when every check passes. */
FT_API ft_status ft_selfcheck(const double* weights, ft_check_callback cb, void* user,
                              int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* FUZZYTRUST_H */
