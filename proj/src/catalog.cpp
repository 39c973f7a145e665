#include "cs2g/catalog.hpp"

#include <algorithm>

#include <json.hpp>
#include <numbers>

#include "cs2g/faces.hpp"

namespace cs2g {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Matrix& group_arg(const Tangent& v, std::size_t i) { return std::get<Matrix>(v[i]); }
const PathTangent& path_arg(const Tangent& v, std::size_t i) { return std::get<PathTangent>(v[i]); }
const SampledPath& path_at(const Point& p, std::size_t i) { return std::get<SampledPath>(p[i]); }

// (1/2) (int <X, dY> - int <Y, dX>).
double antisymmetric_derivative_pairing(const PathTangent& x, const PathTangent& y, const GroupSpec& spec) {
  return 0.5 * (theta_integral(x.values, y.derivs, spec) - theta_integral(y.values, x.derivs, spec));
}

// First-derivative weights at x0 for the given nodes (Fornberg's recursion).
std::vector<double> derivative_weights(const std::vector<double>& nodes, double x0) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

// Sixth-order differences along t: centered seven-point stencils, shifted to
// stay inside the grid near the ends.
std::vector<Matrix> t_derivative(const std::vector<Matrix>& f, double step) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 6) fail(ErrorCode::GridTooCoarse, "t-derivative needs at least 6 intervals");
  std::vector<std::vector<double>> shifted(7);
  for (int j = 0; j < 7; ++j) {
    std::vector<double> nodes;
    for (int i = 0; i < 7; ++i) nodes.push_back(i);
    shifted[j] = derivative_weights(nodes, j);
  }
  std::vector<Matrix> out(n + 1);
  for (int j = 0; j <= n; ++j) {
    const int start = std::clamp(j - 3, 0, n - 6);
    const std::vector<double>& w = shifted[j - start];
    Matrix d = Matrix::Zero(f[j].rows(), f[j].cols());
    for (int i = 0; i < 7; ++i) d += w[i] * f[start + i];
    out[j] = d / step;
  }
  return out;
}

}  // namespace

double theta_integral(const std::vector<Matrix>& x, const std::vector<Matrix>& y, const GroupSpec& spec) {
  return integrate_pairing(x, y, spec, kFormQuadrature);
}

FormEvaluator form_theta(const GroupSpec&) {
  return FormEvaluator{"Theta", spaces::G(), 1, ValueKind::Algebra,
                       [](const Point&, const std::vector<Tangent>& v) { return FormValue(group_arg(v[0], 0)); }};
}

FormEvaluator form_theta_hat(const GroupSpec&) {
  return FormEvaluator{"Theta_hat", spaces::G(), 1, ValueKind::Algebra,
                       [](const Point& p, const std::vector<Tangent>& v) {
                         return FormValue(adjoint_action(std::get<Matrix>(p[0]), group_arg(v[0], 0)));
                       }};
}

FormEvaluator form_R(const GroupSpec& spec) {
  return FormEvaluator{"R", spaces::OG(), 2, ValueKind::Scalar,
                       [spec](const Point&, const std::vector<Tangent>& v) {
                         return FormValue(antisymmetric_derivative_pairing(path_arg(v[0], 0), path_arg(v[1], 0), spec));
                       }};
}

double R_naive(const SampledLoop& gamma, const PathTangent& x, const PathTangent& y) {
  return theta_integral(x.values, y.derivs, gamma.spec);
}

FormEvaluator form_nu(const GroupSpec& spec) {
  return FormEvaluator{"nu", spaces::OG2(), 1, ValueKind::Scalar,
                       [spec](const Point& p, const std::vector<Tangent>& v) {
                         return FormValue(2.0 * theta_integral(path_arg(v[0], 0).values, higgs_hat(path_at(p, 1)), spec));
                       }};
}

FormEvaluator form_epsilon(const GroupSpec& spec) {
  return FormEvaluator{"epsilon", spaces::PGxOG(), 1, ValueKind::Scalar,
                       [spec](const Point& p, const std::vector<Tangent>& v) {
                         return FormValue(2.0 * theta_integral(path_arg(v[0], 0).values, higgs_hat(path_at(p, 1)), spec));
                       }};
}

FormEvaluator form_B(const GroupSpec& spec) {
  return FormEvaluator{"B", spaces::PG(), 2, ValueKind::Scalar,
                       [spec](const Point&, const std::vector<Tangent>& v) {
                         return FormValue(antisymmetric_derivative_pairing(path_arg(v[0], 0), path_arg(v[1], 0), spec));
                       }};
}

FormEvaluator form_omega(const GroupSpec& spec) {
  return FormEvaluator{"omega", spaces::G(), 3, ValueKind::Scalar,
                       [c = spec.killing_coefficient()](const Point&, const std::vector<Tangent>& v) {
                         const Matrix& x = group_arg(v[0], 0);
                         const Matrix& y = group_arg(v[1], 0);
                         return FormValue(pairing(x * y - y * x, group_arg(v[2], 0), c) / 6.0);
                       }};
}

FormEvaluator form_kappa(const GroupSpec& spec) {
  return FormEvaluator{"kappa", spaces::G2(), 2, ValueKind::Scalar,
                       [c = spec.killing_coefficient()](const Point& p, const std::vector<Tangent>& v) {
                         const Matrix& h = std::get<Matrix>(p[1]);
                         const double a = pairing(group_arg(v[0], 0), adjoint_action(h, group_arg(v[1], 1)), c);
                         const double b = pairing(group_arg(v[1], 0), adjoint_action(h, group_arg(v[0], 1)), c);
                         return FormValue(0.5 * (a - b));
                       }};
}

FormEvaluator form_rho(const GroupSpec& spec) {
  return FormEvaluator{"rho", spaces::PGxOG(), 1, ValueKind::Scalar,
                       [spec](const Point& p, const std::vector<Tangent>& v) {
                         const SampledPath& path = path_at(p, 0);
                         const SampledPath& gamma = path_at(p, 1);
                         const std::vector<Matrix> phi = higgs(path);
                         const std::vector<Matrix> phi_hat_gamma = higgs_hat(gamma);
                         std::vector<Matrix> w;
                         w.reserve(phi.size());
                         for (std::size_t k = 0; k < phi.size(); ++k)
                           w.push_back(gamma.values[k] * phi[k] * gamma.values[k].adjoint() - phi[k] - phi_hat_gamma[k]);
                         const double a = theta_integral(path_arg(v[0], 0).values, w, spec);
                         const double b = theta_integral(path_arg(v[0], 1).values, phi, spec);
                         return FormValue(2.0 * (a + b));
                       }};
}

FormEvaluator form_epsilon_MS(const GroupSpec& spec) {
  return FormEvaluator{"epsilon_MS", spaces::PG(), 1, ValueKind::Scalar,
                       [spec](const Point& p, const std::vector<Tangent>& v) {
                         const SampledPath& path = path_at(p, 0);
                         const Matrix end = adjoint_action(ev_2pi(path), path_arg(v[0], 0).values.back());
                         const std::vector<Matrix> phi = higgs(path);
                         const GridSpec grid = path.grid();
                         std::vector<Matrix> weighted;
                         weighted.reserve(phi.size());
                         for (int k = 0; k <= grid.N(); ++k) weighted.push_back((grid.theta(k) / kTwoPi) * end);
                         return FormValue(2.0 * theta_integral(weighted, phi, spec));
                       }};
}

double adjoint_phase_grid(const SampledPath& p, const LoopOfLoops& f) {
  f.validate();
  const int n_t = f.grid_t.N();
  const int n_theta = p.N();
  if (f.slices.front().N() != n_theta) fail(ErrorCode::InvalidInput, "adjoint_phase: theta grids differ");
  const std::vector<Matrix> phi = higgs(p);
  const std::vector<double> wt = quadrature_weights(n_t, PathKind::Path);
  double total = 0.0;
  std::vector<Matrix> column(n_t + 1);
  std::vector<std::vector<Matrix>> log_dt(n_t + 1, std::vector<Matrix>(n_theta + 1));
  for (int k = 0; k <= n_theta; ++k) {
    for (int j = 0; j <= n_t; ++j) column[j] = f.slices[j].values[k];
    const std::vector<Matrix> dt = t_derivative(column, f.grid_t.step());
    for (int j = 0; j <= n_t; ++j) log_dt[j][k] = p.spec.project_algebra(column[j].adjoint() * dt[j]);
  }
  for (int j = 0; j <= n_t; ++j) total += wt[j] * theta_integral(log_dt[j], phi, p.spec);
  return 2.0 * total;
}

AdjointPhase adjoint_phase(const SampledPath& p, const LoopFamily& f, int n_t) {
  const LoopOfLoops grid = LoopOfLoops::sample(f, n_t);
  AdjointPhase out;
  out.double_integral = adjoint_phase_grid(p, grid);
  const FormEvaluator xi = pullback(form_rho(p.spec), family_evaluation());
  const FormEvaluator integrated = fiber_integrate(xi, n_t);
  out.fiber_integral = integrated({p, f}, {}).scalar();
  return out;
}

const char* to_string(EntryStatus status) noexcept {
  switch (status) {
    case EntryStatus::Housed: return "housed";
    case EntryStatus::Function: return "function";
    case EntryStatus::DescendedOnly: return "descended-only";
  }
  return "?";
}

std::vector<CatalogEntry> catalog() {
  using S = EntryStatus;
  return {
      {"Theta", "Θ", "G", 1, "algebra", S::Housed, "catalog: form_theta", "left-invariant Maurer-Cartan form", true},
      {"Theta_hat", "Θ̂", "G", 1, "algebra", S::Housed, "catalog: form_theta_hat", "right-invariant Maurer-Cartan form", true},
      {"mu", "μ", "central extension of OG", 1, "scalar", S::DescendedOnly, "not represented; checked through epsilon, nu, rho",
       "connection on the central extension of the loop group", true},
      {"R", "R", "OG", 2, "scalar", S::Housed, "catalog: form_R", "curvature of mu, a left-invariant 2-form", true},
      {"nu", "ν", "OG^2", 1, "scalar", S::Housed, "catalog: form_nu", "defect of multiplicativity of mu", true},
      {"phi", "φ", "PG", 0, "loop of algebra elements", S::Function, "path_space: higgs", "Higgs field p^{-1} dp", true},
      {"phi_hat", "φ̂", "PG", 0, "loop of algebra elements", S::Function, "path_space: higgs_hat", "Higgs field Ad_p(p^{-1} dp)", true},
      {"B", "B", "PG", 2, "scalar", S::Housed, "catalog: form_B", "curving of the basic gerbe", true},
      {"epsilon", "ε", "PGxOG", 1, "scalar", S::Housed, "catalog: form_epsilon", "correction turning mu into a bundle gerbe connection", true},
      {"nabla", "∇", "PG x central extension of OG", 1, "scalar", S::DescendedOnly,
       "not represented; checked through delta epsilon = nu and the crossed-module identity", "bundle gerbe connection mu - pi^* epsilon", true},
      {"kappa", "κ", "G^2", 2, "scalar", S::Housed, "catalog: form_kappa", "defect of multiplicativity of the basic gerbe curvature", true},
      {"rho", "ρ", "PGxOG", 1, "scalar", S::Housed, "catalog: form_rho", "defect of the crossed-module action on mu", true},
      {"A", "A", "Q", 1, "algebra", S::Housed, "cs_gerbe: form_connection", "principal connection on Q", true},
      {"beta_A", "β_A", "QxPG", 2, "scalar", S::Housed, "cs_gerbe: form_beta_A", "curving of the Chern-Simons 2-gerbe", true},
      {"alpha", "α", "QxPG^2", 1, "scalar", S::Housed, "cs_gerbe: form_alpha", "trivialisation connection of the 2-gerbe product", true},
      {"minus_CS", "−CS(A)", "Q", 3, "scalar", S::Housed, "cs_gerbe: form_cs", "2-curving, minus the Chern-Simons 3-form", true},
      {"omega", "ω", "G", 3, "scalar", S::Housed, "catalog: form_omega", "curvature 3-form of the basic gerbe", false},
      {"epsilon_MS", "ε_MS", "PG", 1, "scalar", S::Housed, "catalog: form_epsilon_MS", "alternative connection correction", false},
      {"F_A", "F_A", "Q", 2, "algebra", S::Housed, "cs_gerbe: form_curvature", "curvature of A", false},
      {"adjoint_phase", "", "PGxPOG", 0, "scalar", S::Housed, "catalog: adjoint_phase",
       "phase of the lifted adjoint action, double integral and fiber integral", false},
      {"four_curvature", "", "X", 4, "scalar", S::Housed, "cs_gerbe: four_curvature", "curvature 4-form -<F_A ^ F_A>", false},
  };
}

std::string catalog_json(int indent) {
  nlohmann::json out = nlohmann::json::array();
  for (const CatalogEntry& e : catalog()) {
    out.push_back({{"name", e.name},
                   {"symbol", e.symbol},
                   {"space", e.space},
                   {"degree", e.degree},
                   {"value_kind", e.value_kind},
                   {"status", to_string(e.status)},
                   {"location", e.location},
                   {"description", e.description},
                   {"table_row", e.table_row}});
  }
  return out.dump(indent);
}

std::vector<CatalogEntry> catalog_from_json(const std::string& text) {
  std::vector<CatalogEntry> out;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    for (const auto& e : j) {
      CatalogEntry c;
      c.name = e.at("name").get<std::string>();
      c.symbol = e.at("symbol").get<std::string>();
      c.space = e.at("space").get<std::string>();
      c.degree = e.at("degree").get<int>();
      c.value_kind = e.at("value_kind").get<std::string>();
      const std::string status = e.at("status").get<std::string>();
      c.status = status == "function" ? EntryStatus::Function
                 : status == "descended-only" ? EntryStatus::DescendedOnly
                                              : EntryStatus::Housed;
      c.location = e.at("location").get<std::string>();
      c.description = e.at("description").get<std::string>();
      c.table_row = e.at("table_row").get<bool>();
      out.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::InvalidInput, std::string("catalog json: ") + ex.what());
  }
  return out;
}

}  // namespace cs2g
