#ifndef CS2G_H
#define CS2G_H

/* C interface to the check suite. Strings returned through char** must be
   released with cs2g_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CS2G_BUILDING_LIBRARY)
#define CS2G_API __declspec(dllexport)
#else
#define CS2G_API __declspec(dllimport)
#endif
#else
#define CS2G_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs2g_status {
  CS2G_OK = 0,
  CS2G_INVALID_INPUT = 1,
  CS2G_GRID_TOO_COARSE = 2,
  CS2G_UNKNOWN_MAP = 3,
  CS2G_UNSUPPORTED_DEGREE = 4,
  CS2G_INVALID_DEGREE = 5,
  CS2G_INVALID_SPACE = 6,
  CS2G_UNKNOWN_CHECK = 7,
  CS2G_UNKNOWN_GROUP = 8,
  CS2G_IO = 9,
  CS2G_INTERNAL = 100
} cs2g_status;

typedef enum cs2g_format { CS2G_FORMAT_TEXT = 0, CS2G_FORMAT_JSON = 1, CS2G_FORMAT_CSV = 2 } cs2g_format;

typedef struct cs2g_config cs2g_config;

CS2G_API const char* cs2g_version(void);
/* Message of the last failed call on this thread, or "" */
CS2G_API const char* cs2g_last_error(void);
CS2G_API void cs2g_string_free(char* s);

CS2G_API cs2g_config* cs2g_config_new(void);
CS2G_API void cs2g_config_free(cs2g_config* config);
CS2G_API cs2g_status cs2g_config_set_group(cs2g_config* config, const char* group);
CS2G_API cs2g_status cs2g_config_set_grid(cs2g_config* config, int n);
CS2G_API cs2g_status cs2g_config_set_step(cs2g_config* config, double h);
CS2G_API cs2g_status cs2g_config_set_seed(cs2g_config* config, uint64_t seed);
CS2G_API cs2g_status cs2g_config_set_samples(cs2g_config* config, int points, int tangent_sets);
CS2G_API cs2g_status cs2g_config_set_tolerance(cs2g_config* config, const char* check, double tolerance);
/* Applies the keys of a JSON config object on top of the current values */
CS2G_API cs2g_status cs2g_config_load_json(cs2g_config* config, const char* json);

CS2G_API size_t cs2g_check_count(void);
/* Name of the i-th registered check (sorted), or NULL */
CS2G_API const char* cs2g_check_name(size_t index);

/* Runs the named checks (all registered checks when count is 0) and writes
   the report in the requested format. all_pass may be NULL. */
CS2G_API cs2g_status cs2g_run_checks(const cs2g_config* config, const char* const* names, size_t count,
                                     cs2g_format format, char** report, int* all_pass);

CS2G_API cs2g_status cs2g_catalog_json(char** json);
CS2G_API cs2g_status cs2g_su2_period(int n, double* value);

#ifdef __cplusplus
}
#endif

#endif
