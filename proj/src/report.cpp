#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cs2g/verify.hpp"

namespace cs2g {

namespace {

constexpr const char* kReportVersion = "0.1.0";

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

nlohmann::json report_json(const CheckReport& r) {
  nlohmann::json subs = nlohmann::json::array();
  for (const SubResult& s : r.subresults)
    subs.push_back({{"name", s.name},
                    {"samples", s.samples},
                    {"max_abs_err", s.max_abs_err},
                    {"max_rel_err", s.max_rel_err},
                    {"tolerance", s.tolerance},
                    {"pass", s.pass}});
  nlohmann::json j{{"check", r.check},
                   {"category", r.category},
                   {"group", r.group},
                   {"N", r.N},
                   {"h", r.h},
                   {"seed", r.seed},
                   {"samples", r.samples},
                   {"max_abs_err", r.max_abs_err},
                   {"max_rel_err", r.max_rel_err},
                   {"tolerance", r.tolerance},
                   {"observed_order", nullptr},
                   {"uses_fd", r.uses_fd},
                   {"fd_exact", r.fd_exact},
                   {"pass", r.pass},
                   {"runtime_ms", r.runtime_ms},
                   {"note", r.note},
                   {"subresults", subs}};
  if (r.observed_order) j["observed_order"] = *r.observed_order;
  return j;
}

}  // namespace

std::string reports_to_json(const std::vector<CheckReport>& reports, const CheckParams& params, int indent) {
  nlohmann::json config{{"group", params.group},
                        {"N", params.N},
                        {"h", params.h},
                        {"seed", params.seed},
                        {"points", params.points},
                        {"tangent_sets", params.tangent_sets},
                        {"chart_dim", params.chart_dim},
                        {"tolerance_overrides", params.tolerance_overrides}};
  nlohmann::json list = nlohmann::json::array();
  for (const CheckReport& r : reports) list.push_back(report_json(r));
  nlohmann::json doc{{"version", kReportVersion}, {"config", config}, {"reports", list}};
  return doc.dump(indent);
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "check,group,N,h,max_abs_err,max_rel_err,observed_order,pass\n";
  for (const CheckReport& r : reports) {
    out << r.check << ',' << r.group << ',' << r.N << ',' << number(r.h) << ',' << number(r.max_abs_err) << ','
        << number(r.max_rel_err) << ',';
    if (r.observed_order) {
      out << number(*r.observed_order);
    } else if (r.fd_exact) {
      out << "fd_exact";
    }
    out << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string reports_to_text(const std::vector<CheckReport>& reports) {
  std::size_t width = 5;
  for (const CheckReport& r : reports) {
    width = std::max(width, r.check.size());
    if (r.subresults.size() > 1)
      for (const SubResult& s : r.subresults) width = std::max(width, s.name.size() + 2);
  }
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %-6s  %12s  %10s  %8s  %s\n", static_cast<int>(width), "check", "group",
                "max rel err", "tol", "order", "result");
  out << line;
  for (const CheckReport& r : reports) {
    std::string order = "-";
    if (r.observed_order) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", *r.observed_order);
      order = buf;
    } else if (r.fd_exact) {
      order = "exact";
    }
    std::snprintf(line, sizeof line, "%-*s  %-6s  %12.3e  %10.1e  %8s  %s\n", static_cast<int>(width),
                  r.check.c_str(), r.group.c_str(), r.max_rel_err, r.tolerance, order.c_str(),
                  r.pass ? "PASS" : "FAIL");
    out << line;
    if (r.subresults.size() > 1) {
      for (const SubResult& s : r.subresults) {
        std::snprintf(line, sizeof line, "%-*s  %-6s  %12.3e  %10.1e  %8s  %s\n", static_cast<int>(width),
                      ("  " + s.name).c_str(), "", s.max_rel_err, s.tolerance, "", s.pass ? "ok" : "fail");
        out << line;
      }
    }
  }
  return out.str();
}

std::vector<CheckReport> convergence_sweep(const std::vector<std::string>& names, const CheckParams& base,
                                           const std::vector<int>& ns, const std::vector<double>& hs) {
  std::vector<CheckReport> rows;
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  for (const std::string& name : sorted) {
    for (int n : ns) {
      for (double h : hs) {
        CheckParams p = base;
        p.N = n;
        p.h = h;
        rows.push_back(run_check(name, p));
      }
    }
  }
  return rows;
}

std::map<std::string, std::vector<double>> fitted_grid_orders(const std::vector<CheckReport>& sweep) {
  std::map<std::string, std::map<int, double>> errors;
  for (const CheckReport& r : sweep) {
    char key[160];
    std::snprintf(key, sizeof key, "%s@h=%.0e", r.check.c_str(), r.h);
    errors[key][r.N] = r.max_abs_err;
  }
  std::map<std::string, std::vector<double>> out;
  for (const auto& [key, by_n] : errors) {
    std::vector<double>& orders = out[key];
    for (auto it = by_n.begin(); std::next(it) != by_n.end(); ++it) {
      const auto next = std::next(it);
      const double ratio = static_cast<double>(next->first) / it->first;
      if (it->second > 0.0 && next->second > 0.0)
        orders.push_back(std::log(it->second / next->second) / std::log(ratio));
      else
        orders.push_back(NAN);
    }
  }
  return out;
}

void apply_config_json(RunConfig& config, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::InvalidInput, std::string("config is not valid JSON: ") + ex.what());
  }
  if (!j.is_object()) fail(ErrorCode::InvalidInput, "config must be a JSON object");
  static const std::vector<std::string> known{"group", "N", "h", "seed", "points", "tangent_sets", "chart_dim",
                                              "tolerances", "checks", "output", "format"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      fail(ErrorCode::InvalidInput, "unknown config key '" + item.key() + "'");
  try {
    CheckParams& p = config.params;
    if (j.contains("group")) p.group = j["group"].get<std::string>();
    if (j.contains("N")) p.N = j["N"].get<int>();
    if (j.contains("h")) p.h = j["h"].get<double>();
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("points")) p.points = j["points"].get<int>();
    if (j.contains("tangent_sets")) p.tangent_sets = j["tangent_sets"].get<int>();
    if (j.contains("chart_dim")) p.chart_dim = j["chart_dim"].get<int>();
    if (j.contains("tolerances"))
      for (const auto& item : j["tolerances"].items()) p.tolerance_overrides[item.key()] = item.value().get<double>();
    if (j.contains("checks")) {
      const nlohmann::json& c = j["checks"];
      config.checks.clear();
      if (c.is_string()) {
        if (c.get<std::string>() != "all") config.checks.push_back(c.get<std::string>());
      } else {
        for (const auto& name : c) config.checks.push_back(name.get<std::string>());
      }
    }
    if (j.contains("output")) config.output = j["output"].get<std::string>();
    if (j.contains("format")) config.format = j["format"].get<std::string>();
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::InvalidInput, std::string("config field has the wrong type: ") + ex.what());
  }
  if (config.format != "text" && config.format != "json" && config.format != "csv")
    fail(ErrorCode::InvalidInput, "format must be text, json or csv");
}

}  // namespace cs2g
