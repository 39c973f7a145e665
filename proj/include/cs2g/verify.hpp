#pragma once

// Named, seeded numerical checks of the gerbe identities.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cs2g/lie.hpp"

namespace cs2g {

struct CheckParams {
  std::string group = "su2";
  int N = 128;
  double h = 1e-4;
  std::uint64_t seed = 7;
  int points = 8;
  int tangent_sets = 4;
  int chart_dim = 4;
  std::map<std::string, double> tolerance_overrides;

  void validate() const;
};

struct SubResult {
  std::string name;
  int samples = 0;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string check;
  std::string category;
  std::string group;
  int N = 0;
  double h = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  std::optional<double> observed_order;
  bool fd_exact = false;
  bool uses_fd = false;
  bool pass = false;
  double runtime_ms = 0.0;
  std::vector<SubResult> subresults;
  std::string note;

  // Fills the headline numbers from the sub-result with the largest error
  // relative to its tolerance; pass holds iff every sub-result passes.
  void finalize();
};

using CheckFunction = std::function<CheckReport(const CheckParams&, Rng&)>;

struct CheckInfo {
  std::string name;
  std::string category;
  double tolerance;
  CheckFunction run;
};

const std::vector<CheckInfo>& check_registry();
std::vector<std::string> check_names();
const CheckInfo& find_check(const std::string& name);

// Generator for a check: mt19937_64 seeded with seed_seq{seed, fnv1a(name)}.
Rng check_rng(std::uint64_t seed, const std::string& name);

CheckReport run_check(const std::string& name, const CheckParams& params);
// Runs the named checks (all when names is empty and all_checks is set), in
// name order.
std::vector<CheckReport> run_checks(const std::vector<std::string>& names, const CheckParams& params);
std::vector<CheckReport> run_all(const CheckParams& params);

std::string reports_to_json(const std::vector<CheckReport>& reports, const CheckParams& params, int indent = 2);
std::string reports_to_csv(const std::vector<CheckReport>& reports);
std::string reports_to_text(const std::vector<CheckReport>& reports);

// N in {64, 128, 256} x h in {1e-3, 1e-4, 1e-5} for each named check.
std::vector<CheckReport> convergence_sweep(const std::vector<std::string>& names, const CheckParams& base,
                                           const std::vector<int>& ns = {64, 128, 256},
                                           const std::vector<double>& hs = {1e-3, 1e-4, 1e-5});
// log2(err(N) / err(2N)) at fixed h, per check, from a sweep.
std::map<std::string, std::vector<double>> fitted_grid_orders(const std::vector<CheckReport>& sweep);

// Run configuration shared by the command line and the C interface.
struct RunConfig {
  CheckParams params;
  std::vector<std::string> checks;  // empty selects every check
  std::string output;
  std::string format = "text";      // text, json or csv
};
// Overrides the fields present in a JSON object: group, N, h, seed, points,
// tangent_sets, chart_dim, tolerances {check: tol}, checks ("all" or a list),
// output, format.
void apply_config_json(RunConfig& config, const std::string& text);

// The integral of omega over SU(2) by midpoint quadrature in Euler angles.
double su2_omega_period(int n);

}  // namespace cs2g
