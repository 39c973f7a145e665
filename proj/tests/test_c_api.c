#include <math.h>
#include <stdio.h>
#include <string.h>

#include "cs2g/cs2g.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  EXPECT(strcmp(cs2g_version(), "0.1.0") == 0);
  EXPECT(cs2g_check_count() >= 20);
  EXPECT(cs2g_check_name(0) != NULL);
  EXPECT(cs2g_check_name(cs2g_check_count()) == NULL);

  cs2g_config* config = cs2g_config_new();
  EXPECT(config != NULL);
  EXPECT(cs2g_config_set_group(config, "su2") == CS2G_OK);
  EXPECT(cs2g_config_set_group(config, "so4") == CS2G_UNKNOWN_GROUP);
  EXPECT(strlen(cs2g_last_error()) > 0);
  EXPECT(cs2g_config_set_grid(config, 8) == CS2G_GRID_TOO_COARSE);
  EXPECT(cs2g_config_set_grid(config, 33) == CS2G_INVALID_INPUT);
  EXPECT(cs2g_config_set_grid(config, 32) == CS2G_OK);
  EXPECT(strlen(cs2g_last_error()) == 0);
  EXPECT(cs2g_config_set_step(config, 1.0) == CS2G_INVALID_INPUT);
  EXPECT(cs2g_config_set_step(config, 1e-4) == CS2G_OK);
  EXPECT(cs2g_config_set_seed(config, 11) == CS2G_OK);
  EXPECT(cs2g_config_set_samples(config, 2, 1) == CS2G_OK);
  EXPECT(cs2g_config_set_samples(config, 0, 1) == CS2G_INVALID_INPUT);
  EXPECT(cs2g_config_set_tolerance(config, "nonexistent", 1.0) == CS2G_UNKNOWN_CHECK);
  EXPECT(cs2g_config_load_json(config, "{\"bogus\": 1}") == CS2G_INVALID_INPUT);
  EXPECT(cs2g_config_load_json(config, "{\"chart_dim\": 3}") == CS2G_OK);

  const char* names[] = {"delta_epsilon_eq_nu", "delta_squared"};
  char* report = NULL;
  int all_pass = -1;
  EXPECT(cs2g_run_checks(config, names, 2, CS2G_FORMAT_CSV, &report, &all_pass) == CS2G_OK);
  EXPECT(report != NULL);
  EXPECT(all_pass == 1);
  if (report) {
    EXPECT(strncmp(report, "check,group,N,h,", 16) == 0);
    EXPECT(strstr(report, "delta_squared,su2,32,") != NULL);
  }
  cs2g_string_free(report);

  EXPECT(cs2g_config_set_tolerance(config, "delta_squared", 1e-300) == CS2G_OK);
  report = NULL;
  EXPECT(cs2g_run_checks(config, names + 1, 1, CS2G_FORMAT_JSON, &report, &all_pass) == CS2G_OK);
  EXPECT(report != NULL && report[0] == '{');
  cs2g_string_free(report);

  const char* bad[] = {"nonexistent"};
  report = NULL;
  EXPECT(cs2g_run_checks(config, bad, 1, CS2G_FORMAT_TEXT, &report, NULL) == CS2G_UNKNOWN_CHECK);
  EXPECT(report == NULL);
  EXPECT(cs2g_run_checks(NULL, names, 1, CS2G_FORMAT_TEXT, &report, NULL) == CS2G_INVALID_INPUT);

  char* catalog = NULL;
  EXPECT(cs2g_catalog_json(&catalog) == CS2G_OK);
  EXPECT(catalog != NULL && strstr(catalog, "descended-only") != NULL);
  cs2g_string_free(catalog);

  double period = 0.0;
  EXPECT(cs2g_su2_period(24, &period) == CS2G_OK);
  EXPECT(fabs(fabs(period) - 2.0 * 3.14159265358979323846) < 0.1);
  EXPECT(cs2g_su2_period(24, NULL) == CS2G_INVALID_INPUT);

  cs2g_config_free(config);
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("c api: all assertions passed\n");
  return failures ? 1 : 0;
}
