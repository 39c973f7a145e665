#include "cs2g/cs2g.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cs2g/catalog.hpp"
#include "cs2g/verify.hpp"

struct cs2g_config {
  cs2g::CheckParams params;
};

namespace {

thread_local std::string last_error;

cs2g_status status_of(cs2g::ErrorCode code) { return static_cast<cs2g_status>(static_cast<int>(code)); }

template <class F>
cs2g_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CS2G_OK;
  } catch (const cs2g::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return CS2G_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return CS2G_INTERNAL;
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) cs2g::fail(cs2g::ErrorCode::InvalidInput, what);
}

}  // namespace

extern "C" {

const char* cs2g_version(void) { return "0.1.0"; }

const char* cs2g_last_error(void) { return last_error.c_str(); }

void cs2g_string_free(char* s) { std::free(s); }

cs2g_config* cs2g_config_new(void) {
  try {
    return new cs2g_config{};
  } catch (...) {
    last_error = "allocation failed";
    return nullptr;
  }
}

void cs2g_config_free(cs2g_config* config) { delete config; }

cs2g_status cs2g_config_set_group(cs2g_config* config, const char* group) {
  return guarded([&] {
    require(config && group, "null argument");
    cs2g::GroupSpec::parse(group);
    config->params.group = group;
  });
}

cs2g_status cs2g_config_set_grid(cs2g_config* config, int n) {
  return guarded([&] {
    require(config != nullptr, "null argument");
    cs2g::GridSpec check(n);
    config->params.N = n;
  });
}

cs2g_status cs2g_config_set_step(cs2g_config* config, double h) {
  return guarded([&] {
    require(config != nullptr, "null argument");
    require(h >= 1e-7 && h <= 1e-2, "h must lie in [1e-7, 1e-2]");
    config->params.h = h;
  });
}

cs2g_status cs2g_config_set_seed(cs2g_config* config, uint64_t seed) {
  return guarded([&] {
    require(config != nullptr, "null argument");
    config->params.seed = seed;
  });
}

cs2g_status cs2g_config_set_samples(cs2g_config* config, int points, int tangent_sets) {
  return guarded([&] {
    require(config != nullptr, "null argument");
    require(points >= 1 && tangent_sets >= 1, "sample counts must be positive");
    config->params.points = points;
    config->params.tangent_sets = tangent_sets;
  });
}

cs2g_status cs2g_config_set_tolerance(cs2g_config* config, const char* check, double tolerance) {
  return guarded([&] {
    require(config && check, "null argument");
    cs2g::find_check(check);
    require(tolerance > 0.0, "tolerance must be positive");
    config->params.tolerance_overrides[check] = tolerance;
  });
}

cs2g_status cs2g_config_load_json(cs2g_config* config, const char* json) {
  return guarded([&] {
    require(config && json, "null argument");
    cs2g::RunConfig run{config->params, {}, "", "text"};
    cs2g::apply_config_json(run, json);
    run.params.validate();
    config->params = run.params;
  });
}

size_t cs2g_check_count(void) { return cs2g::check_registry().size(); }

const char* cs2g_check_name(size_t index) {
  const auto& checks = cs2g::check_registry();
  return index < checks.size() ? checks[index].name.c_str() : nullptr;
}

cs2g_status cs2g_run_checks(const cs2g_config* config, const char* const* names, size_t count, cs2g_format format,
                            char** report, int* all_pass) {
  return guarded([&] {
    require(config && report, "null argument");
    require(count == 0 || names, "null check list");
    *report = nullptr;
    std::vector<std::string> selected;
    for (size_t i = 0; i < count; ++i) {
      require(names[i] != nullptr, "null check name");
      selected.emplace_back(names[i]);
    }
    const std::vector<cs2g::CheckReport> reports =
        count == 0 ? cs2g::run_all(config->params) : cs2g::run_checks(selected, config->params);
    std::string text;
    switch (format) {
      case CS2G_FORMAT_TEXT: text = cs2g::reports_to_text(reports); break;
      case CS2G_FORMAT_JSON: text = cs2g::reports_to_json(reports, config->params); break;
      case CS2G_FORMAT_CSV: text = cs2g::reports_to_csv(reports); break;
      default: cs2g::fail(cs2g::ErrorCode::InvalidInput, "unknown report format");
    }
    if (all_pass) {
      bool ok = true;
      for (const auto& r : reports) ok = ok && r.pass;
      *all_pass = ok ? 1 : 0;
    }
    *report = duplicate(text);
  });
}

cs2g_status cs2g_catalog_json(char** json) {
  return guarded([&] {
    require(json != nullptr, "null argument");
    *json = duplicate(cs2g::catalog_json());
  });
}

cs2g_status cs2g_su2_period(int n, double* value) {
  return guarded([&] {
    require(value != nullptr, "null argument");
    *value = cs2g::su2_omega_period(n);
  });
}

}  // extern "C"
