#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cs2g/catalog.hpp"
#include "cs2g/cs_gerbe.hpp"
#include "cs2g/faces.hpp"
#include "cs2g/verify.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string config_file;
  std::string group;
  int N = 0;
  double h = 0.0;
  std::uint64_t seed = 0;
  int points = 0;
  int tangent_sets = 0;
  int chart_dim = 0;
  std::vector<std::string> checks;
  std::vector<std::string> tolerances;
  std::string output;
  std::string json;
  std::string csv;
  std::string format;
};

void add_run_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file (flags take precedence)");
  cmd->add_option("--group", f.group, "su2, su3, so3, so5, sp1, ...");
  cmd->add_option("--N", f.N, "theta grid intervals (even, >= 16)");
  cmd->add_option("--h", f.h, "finite-difference step in [1e-7, 1e-2]");
  cmd->add_option("--seed", f.seed, "random seed (default 7, or CS2G_SEED)");
  cmd->add_option("--points", f.points, "random points per check");
  cmd->add_option("--tangent-sets", f.tangent_sets, "tangent tuples per point");
  cmd->add_option("--chart-dim", f.chart_dim, "dimension of the base chart");
  cmd->add_option("--checks", f.checks, "check names, or all")->delimiter(',');
  cmd->add_option("--tol", f.tolerances, "tolerance override as check=value")->delimiter(',');
  cmd->add_option("--output", f.output, "write the report here instead of stdout");
  cmd->add_option("--format", f.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) cs2g::fail(cs2g::ErrorCode::Io, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) cs2g::fail(cs2g::ErrorCode::Io, "cannot write " + path);
}

cs2g::RunConfig resolve(const CLI::App* cmd, const Flags& f) {
  cs2g::RunConfig config;
  if (const char* env = std::getenv("CS2G_SEED")) {
    try {
      config.params.seed = std::stoull(env);
    } catch (const std::exception&) {
      cs2g::fail(cs2g::ErrorCode::InvalidInput, "CS2G_SEED is not an integer");
    }
  }
  if (!f.config_file.empty()) cs2g::apply_config_json(config, read_file(f.config_file));
  auto given = [cmd](const char* name) { return cmd->count(name) > 0; };
  if (given("--group")) config.params.group = f.group;
  if (given("--N")) config.params.N = f.N;
  if (given("--h")) config.params.h = f.h;
  if (given("--seed")) config.params.seed = f.seed;
  if (given("--points")) config.params.points = f.points;
  if (given("--tangent-sets")) config.params.tangent_sets = f.tangent_sets;
  if (given("--chart-dim")) config.params.chart_dim = f.chart_dim;
  if (given("--checks")) {
    config.checks.clear();
    for (const std::string& c : f.checks)
      if (c != "all") config.checks.push_back(c);
  }
  for (const std::string& item : f.tolerances) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) cs2g::fail(cs2g::ErrorCode::InvalidInput, "--tol expects check=value, got " + item);
    std::size_t used = 0;
    double tol = 0.0;
    try {
      tol = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() - eq - 1)
      cs2g::fail(cs2g::ErrorCode::InvalidInput, "--tol value is not a number: " + item);
    config.params.tolerance_overrides[item.substr(0, eq)] = tol;
  }
  if (given("--output")) config.output = f.output;
  if (given("--format")) config.format = f.format;
  config.params.validate();
  for (const std::string& c : config.checks) cs2g::find_check(c);
  return config;
}

std::vector<std::string> selected(const cs2g::RunConfig& config) {
  return config.checks.empty() ? cs2g::check_names() : config.checks;
}

void emit(const cs2g::RunConfig& config, const std::string& text) {
  if (config.output.empty()) {
    std::cout << text;
  } else {
    write_file(config.output, text);
  }
}

int cmd_check(const CLI::App* cmd, const Flags& f) {
  const cs2g::RunConfig config = resolve(cmd, f);
  const std::vector<cs2g::CheckReport> reports = cs2g::run_checks(selected(config), config.params);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.pass;
  if (config.format == "json") {
    emit(config, cs2g::reports_to_json(reports, config.params) + "\n");
  } else if (config.format == "csv") {
    emit(config, cs2g::reports_to_csv(reports));
  } else {
    emit(config, cs2g::reports_to_text(reports));
  }
  if (!f.json.empty()) write_file(f.json, cs2g::reports_to_json(reports, config.params) + "\n");
  if (!f.csv.empty()) write_file(f.csv, cs2g::reports_to_csv(reports));
  if (config.format == "text" && config.output.empty())
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok ? 0 : kExitFail;
}

int cmd_convergence(const CLI::App* cmd, const Flags& f) {
  const cs2g::RunConfig config = resolve(cmd, f);
  const std::vector<cs2g::CheckReport> rows = cs2g::convergence_sweep(selected(config), config.params);
  std::ostringstream out;
  out << cs2g::reports_to_csv(rows);
  out << "\ncheck,h,grid_order_64_128,grid_order_128_256\n";
  for (const auto& [key, orders] : cs2g::fitted_grid_orders(rows)) {
    const auto at = key.find("@h=");
    out << key.substr(0, at) << ',' << key.substr(at + 3);
    for (double o : orders) {
      out << ',';
      if (std::isfinite(o)) out << o;
    }
    out << '\n';
  }
  emit(config, out.str());
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.pass;
    if (r.uses_fd && r.h >= 1e-4 && !r.fd_exact && !(r.observed_order && *r.observed_order >= 1.8)) {
      std::cerr << "order below 1.8: " << r.check << " N=" << r.N << " h=" << r.h << '\n';
      ok = false;
    }
  }
  return ok ? 0 : kExitFail;
}

int cmd_demo(const CLI::App* cmd, const Flags& f, bool flat) {
  cs2g::RunConfig config = resolve(cmd, f);
  if (cmd->count("--group") == 0 && f.config_file.empty()) config.params.group = "so5";
  const cs2g::GroupSpec spec = cs2g::GroupSpec::parse(config.params.group);
  const int m = 4;
  cs2g::Rng rng = cs2g::check_rng(config.params.seed, "demo");
  cs2g::BundleModel bundle = flat ? cs2g::BundleModel::flat(spec, m) : cs2g::BundleModel::random(spec, m, rng);
  bundle.set_seed(config.params.seed);
  const int n = config.params.N;
  const cs2g::Point q = cs2g::random_point(cs2g::spaces::QxPG2(m), spec, n, rng);
  auto tangents = [&](const cs2g::Space& s, const cs2g::Point& p, int k) {
    std::vector<cs2g::Tangent> v;
    for (int i = 0; i < k; ++i) v.push_back(cs2g::random_tangent(s, p, spec, rng));
    return v;
  };
  const cs2g::Point qp{q[0], q[1], q[2]};
  const cs2g::Point qq{q[0], q[1]};
  const double beta = cs2g::form_beta_A(bundle)(qp, tangents(cs2g::spaces::QxPG(m), qp, 2)).scalar();
  const double cs = cs2g::form_cs(bundle)(qq, tangents(cs2g::spaces::Q(m), qq, 3)).scalar();
  const double alpha = cs2g::form_alpha(spec, m)(q, tangents(cs2g::spaces::QxPG2(m), q, 1)).scalar();
  const cs2g::Point x{q[0]};
  const std::vector<cs2g::Tangent> v4 = tangents(cs2g::spaces::chart(m), x, 4);
  const double four = cs2g::four_curvature(bundle)(x, v4).scalar();
  std::vector<cs2g::Vector> vs;
  for (const auto& t : v4) vs.push_back(std::get<cs2g::Vector>(t[0]));
  const cs2g::Vector& xv = std::get<cs2g::Vector>(q[0]);
  std::printf("bundle      %s over a chart of dimension %d%s, seed %llu, N = %d\n", spec.name().c_str(), m,
              flat ? " (flat)" : "", static_cast<unsigned long long>(config.params.seed), n);
  std::printf("beta_A      % .12e\n", beta + 0.0);
  std::printf("-CS(A)      % .12e\n", cs + 0.0);
  std::printf("alpha       % .12e\n", alpha + 0.0);
  std::printf("-<F^F>/2pi  % .12e\n", four / (2.0 * std::acos(-1.0)) + 0.0);
  std::printf("-<F,F>/2pi  % .12e   F(v0,v1) paired with F(v2,v3)\n", cs2g::pontryagin_lhs(bundle, xv, vs) + 0.0);
  if (spec.family() == cs2g::Family::SO)
    std::printf("p1/2        % .12e   tr(F^2)/16pi^2\n", cs2g::pontryagin_rhs(bundle, xv, vs) + 0.0);
  return 0;
}

// Terminal columns of a UTF-8 string: continuation bytes and combining marks take none.
std::size_t columns(const std::string& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if ((c & 0xC0) == 0x80) continue;
    const bool combining = i + 1 < s.size() && (c == 0xCC || (c == 0xCD && static_cast<unsigned char>(s[i + 1]) < 0xB0));
    if (!combining) ++n;
  }
  return n;
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t used = columns(s);
  return used >= width ? s : s + std::string(width - used, ' ');
}

int cmd_catalog(bool json) {
  if (json) {
    std::cout << cs2g::catalog_json() << '\n';
    return 0;
  }
  for (const cs2g::CatalogEntry& e : cs2g::catalog()) {
    if (!e.table_row) continue;
    std::printf("%s %s %s deg %d  %-9s %-15s %s\n", pad(e.name, 10).c_str(), pad(e.symbol, 6).c_str(),
                pad(e.space, 28).c_str(), e.degree, e.value_kind == "scalar" ? "scalar" : "algebra", cs2g::to_string(e.status),
                e.location.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for the Chern-Simons bundle 2-gerbe"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "cs2g 0.1.0");

  Flags check_flags, conv_flags, demo_flags;
  CLI::App* check = app.add_subcommand("check", "run checks and report errors");
  add_run_options(check, check_flags);
  check->add_option("--json", check_flags.json, "also write the JSON report to this path");
  check->add_option("--csv", check_flags.csv, "also write the CSV summary to this path");

  CLI::App* conv = app.add_subcommand("convergence", "sweep N and h and fit orders");
  add_run_options(conv, conv_flags);

  CLI::App* demo = app.add_subcommand("demo", "pointwise values for the default SO(5) bundle");
  add_run_options(demo, demo_flags);
  bool flat = false;
  demo->add_flag("--flat", flat, "use the flat connection a = 0");

  CLI::App* cat = app.add_subcommand("catalog", "list the differential forms");
  bool cat_json = false;
  cat->add_flag("--json", cat_json, "print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check(check, check_flags);
    if (*conv) return cmd_convergence(conv, conv_flags);
    if (*demo) return cmd_demo(demo, demo_flags, flat);
    if (*cat) return cmd_catalog(cat_json);
  } catch (const cs2g::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == cs2g::ErrorCode::Io ? kExitFail : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
