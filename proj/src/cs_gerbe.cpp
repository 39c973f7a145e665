#include "cs2g/cs_gerbe.hpp"

#include <array>
#include <cmath>
#include <json.hpp>
#include <numbers>

#include "cs2g/catalog.hpp"
#include "cs2g/faces.hpp"

namespace cs2g {

namespace {

constexpr double kPi = std::numbers::pi;

const Vector& chart_at(const Point& p) { return std::get<Vector>(p[0]); }
const Matrix& group_at(const Point& p, std::size_t i) { return std::get<Matrix>(p[i]); }
const Vector& chart_arg(const Tangent& v) { return std::get<Vector>(v[0]); }
const Matrix& group_arg(const Tangent& v, std::size_t i) { return std::get<Matrix>(v[i]); }

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

Matrix matrix_from_json(const nlohmann::json& j, int d) {
  Matrix m(d, d);
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d)
    fail(ErrorCode::InvalidInput, "bundle json: matrix has wrong size");
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d)
      fail(ErrorCode::InvalidInput, "bundle json: matrix row has wrong size");
    for (int c = 0; c < d; ++c) m(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
  }
  return m;
}

// The three pieces of the Chern-Simons form evaluated from A_i and F_ij.
double cs_value(const std::array<Matrix, 3>& a, const std::array<Matrix, 3>& f, double c) {
  // f[0] = F(V2, V3), f[1] = F(V1, V3), f[2] = F(V1, V2).
  const double a_wedge_f = (pairing(a[0], f[0], c) - pairing(a[1], f[1], c) + pairing(a[2], f[2], c)) / 3.0;
  const double a_aa = pairing(a[0], a[1] * a[2] - a[2] * a[1], c);
  return -a_wedge_f + a_aa / 6.0;
}

}  // namespace

BundleModel::BundleModel(GroupSpec spec, int m) : spec_(std::move(spec)), m_(m) {
  if (m < 1 || m > 8) fail(ErrorCode::InvalidInput, "chart dimension must be between 1 and 8");
  c_.assign(m, spec_.zero());
  s_.assign(m * m, spec_.zero());
  k_.assign(m * m, spec_.zero());
}

BundleModel BundleModel::flat(const GroupSpec& spec, int m) { return BundleModel(spec, m); }

BundleModel BundleModel::random(const GroupSpec& spec, int m, Rng& rng, double scale) {
  BundleModel b(spec, m);
  for (int i = 0; i < m; ++i) {
    b.c_[i] = random_algebra(spec, rng, scale);
    for (int j = 0; j < m; ++j) {
      b.s_[i * m + j] = random_algebra(spec, rng, scale);
      b.k_[i * m + j] = random_algebra(spec, rng, scale);
    }
  }
  return b;
}

Matrix BundleModel::coefficient(int i, const Vector& x) const {
  Matrix a = c_[i];
  for (int j = 0; j < m_; ++j) a += std::sin(x(j)) * s_[i * m_ + j] + std::cos(x(j)) * k_[i * m_ + j];
  return a;
}

Matrix BundleModel::coefficient_partial(int i, int j, const Vector& x) const {
  return std::cos(x(j)) * s_[i * m_ + j] - std::sin(x(j)) * k_[i * m_ + j];
}

Matrix BundleModel::base_connection(const Vector& x, const Vector& v) const {
  if (x.size() != m_ || v.size() != m_) fail(ErrorCode::InvalidInput, "chart vector has wrong dimension");
  Matrix a = spec_.zero();
  for (int i = 0; i < m_; ++i)
    if (v(i) != 0.0) a += v(i) * coefficient(i, x);
  return a;
}

Matrix BundleModel::base_curvature(const Vector& x, const Vector& v, const Vector& w) const {
  if (x.size() != m_ || v.size() != m_ || w.size() != m_)
    fail(ErrorCode::InvalidInput, "chart vector has wrong dimension");
  Matrix dvw = spec_.zero(), dwv = spec_.zero();
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      const Matrix d = coefficient_partial(i, j, x);  // d_j a_i
      dvw += v(j) * w(i) * d;
      dwv += w(j) * v(i) * d;
    }
  const Matrix av = base_connection(x, v), aw = base_connection(x, w);
  return 0.5 * (dvw - dwv + av * aw - aw * av);
}

std::string BundleModel::to_json(int indent) const {
  nlohmann::json j;
  j["family"] = spec_.family() == Family::SU ? "su" : spec_.family() == Family::SO ? "so" : "sp";
  j["n"] = spec_.rank_parameter();
  j["m"] = m_;
  j["seed"] = seed_;
  nlohmann::json c = nlohmann::json::array(), s = nlohmann::json::array(), k = nlohmann::json::array();
  for (int i = 0; i < m_; ++i) {
    c.push_back(matrix_to_json(c_[i]));
    nlohmann::json srow = nlohmann::json::array(), krow = nlohmann::json::array();
    for (int jj = 0; jj < m_; ++jj) {
      srow.push_back(matrix_to_json(s_[i * m_ + jj]));
      krow.push_back(matrix_to_json(k_[i * m_ + jj]));
    }
    s.push_back(srow);
    k.push_back(krow);
  }
  j["constant"] = c;
  j["sine"] = s;
  j["cosine"] = k;
  return j.dump(indent);
}

BundleModel BundleModel::from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    const GroupSpec spec = GroupSpec::parse(j.at("family").get<std::string>() + std::to_string(j.at("n").get<int>()));
    const int m = j.at("m").get<int>();
    BundleModel b(spec, m);
    b.seed_ = j.value("seed", std::uint64_t{0});
    const int d = spec.matrix_size();
    const auto& c = j.at("constant");
    const auto& s = j.at("sine");
    const auto& k = j.at("cosine");
    if (static_cast<int>(c.size()) != m || static_cast<int>(s.size()) != m || static_cast<int>(k.size()) != m)
      fail(ErrorCode::InvalidInput, "bundle json: coefficient table has wrong size");
    for (int i = 0; i < m; ++i) {
      b.c_[i] = matrix_from_json(c[i], d);
      if (static_cast<int>(s[i].size()) != m || static_cast<int>(k[i].size()) != m)
        fail(ErrorCode::InvalidInput, "bundle json: coefficient row has wrong size");
      for (int jj = 0; jj < m; ++jj) {
        b.s_[i * m + jj] = matrix_from_json(s[i][jj], d);
        b.k_[i * m + jj] = matrix_from_json(k[i][jj], d);
      }
    }
    for (const Matrix& x : b.c_)
      if (!spec.in_algebra(x, 1e-9)) fail(ErrorCode::InvalidInput, "bundle json: coefficient is not in the algebra");
    return b;
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::InvalidInput, std::string("bundle json: ") + ex.what());
  }
}

FormEvaluator form_connection(const BundleModel& bundle) {
  return FormEvaluator{"A", spaces::Q(bundle.chart_dimension()), 1, ValueKind::Algebra,
                       [bundle](const Point& p, const std::vector<Tangent>& v) {
                         const Matrix& g = group_at(p, 1);
                         return FormValue(Matrix(adjoint_action_inverse(g, bundle.base_connection(chart_at(p), chart_arg(v[0]))) +
                                                 group_arg(v[0], 1)));
                       }};
}

FormEvaluator form_curvature(const BundleModel& bundle) {
  return FormEvaluator{"F_A", spaces::Q(bundle.chart_dimension()), 2, ValueKind::Algebra,
                       [bundle](const Point& p, const std::vector<Tangent>& v) {
                         const Matrix& g = group_at(p, 1);
                         return FormValue(adjoint_action_inverse(
                             g, bundle.base_curvature(chart_at(p), chart_arg(v[0]), chart_arg(v[1]))));
                       }};
}

FormEvaluator form_cs(const BundleModel& bundle) {
  return FormEvaluator{"-CS(A)", spaces::Q(bundle.chart_dimension()), 3, ValueKind::Scalar,
                       [bundle](const Point& p, const std::vector<Tangent>& v) {
                         const Vector& x = chart_at(p);
                         const Matrix& g = group_at(p, 1);
                         std::array<Matrix, 3> a;
                         for (int i = 0; i < 3; ++i)
                           a[i] = adjoint_action_inverse(g, bundle.base_connection(x, chart_arg(v[i]))) + group_arg(v[i], 1);
                         auto f = [&](int i, int j) {
                           return adjoint_action_inverse(g, bundle.base_curvature(x, chart_arg(v[i]), chart_arg(v[j])));
                         };
                         const std::array<Matrix, 3> fs{f(1, 2), f(0, 2), f(0, 1)};
                         return FormValue(cs_value(a, fs, bundle.spec().killing_coefficient()));
                       }};
}

FormEvaluator form_base_connection(const BundleModel& bundle) {
  return FormEvaluator{"a", spaces::chart(bundle.chart_dimension()), 1, ValueKind::Algebra,
                       [bundle](const Point& p, const std::vector<Tangent>& v) {
                         return FormValue(bundle.base_connection(chart_at(p), chart_arg(v[0])));
                       }};
}

FormEvaluator form_base_curvature(const BundleModel& bundle) {
  return FormEvaluator{"F", spaces::chart(bundle.chart_dimension()), 2, ValueKind::Algebra,
                       [bundle](const Point& p, const std::vector<Tangent>& v) {
                         return FormValue(bundle.base_curvature(chart_at(p), chart_arg(v[0]), chart_arg(v[1])));
                       }};
}

FormEvaluator four_curvature(const BundleModel& bundle) {
  return FormEvaluator{"-<F^F>", spaces::chart(bundle.chart_dimension()), 4, ValueKind::Scalar,
                       [bundle](const Point& p, const std::vector<Tangent>& v) {
                         const Vector& x = chart_at(p);
                         const double c = bundle.spec().killing_coefficient();
                         auto f = [&](int i, int j) { return bundle.base_curvature(x, chart_arg(v[i]), chart_arg(v[j])); };
                         const double ff = pairing(f(0, 1), f(2, 3), c) - pairing(f(0, 2), f(1, 3), c) +
                                           pairing(f(0, 3), f(1, 2), c);
                         return FormValue(-ff / 3.0);
                       }};
}

double pontryagin_lhs(const BundleModel& bundle, const Vector& x, const std::vector<Vector>& v) {
  if (v.size() != 4) fail(ErrorCode::InvalidInput, "pontryagin: needs four chart vectors");
  const Matrix f1 = bundle.base_curvature(x, v[0], v[1]);
  const Matrix f2 = bundle.base_curvature(x, v[2], v[3]);
  return -killing_form(f1, f2, bundle.spec()) / (2.0 * kPi);
}

double pontryagin_rhs(const BundleModel& bundle, const Vector& x, const std::vector<Vector>& v) {
  if (v.size() != 4) fail(ErrorCode::InvalidInput, "pontryagin: needs four chart vectors");
  const Matrix f1 = bundle.base_curvature(x, v[0], v[1]);
  const Matrix f2 = bundle.base_curvature(x, v[2], v[3]);
  return (f1 * f2).trace().real() / (16.0 * kPi * kPi);
}

FormEvaluator form_A_theta_hat(const BundleModel& bundle) {
  return FormEvaluator{"<A,Theta_hat>", spaces::QxG(bundle.chart_dimension()), 2, ValueKind::Scalar,
                       [bundle](const Point& p, const std::vector<Tangent>& v) {
                         const Vector& x = chart_at(p);
                         const Matrix& g = group_at(p, 1);
                         const Matrix& h = group_at(p, 2);
                         const double c = bundle.spec().killing_coefficient();
                         auto a = [&](const Tangent& t) {
                           return Matrix(adjoint_action_inverse(g, bundle.base_connection(x, chart_arg(t))) + group_arg(t, 1));
                         };
                         auto r = [&](const Tangent& t) { return adjoint_action(h, group_arg(t, 2)); };
                         return FormValue(0.5 * (pairing(a(v[0]), r(v[1]), c) - pairing(a(v[1]), r(v[0]), c)));
                       }};
}

SmoothMap pr_path(int m) { return projection(spaces::QxPG(m), spaces::PG(), {2}, "pr.PG"); }
SmoothMap pr_group_pair(int m) { return projection(spaces::QxG2(m), spaces::G2(), {2, 3}, "pr.G2"); }
SmoothMap pr_last_group(int m) { return projection(spaces::QxG(m), spaces::G(), {2}, "pr.G"); }

SmoothMap pr_endpoint_pair(int m) {
  return SmoothMap{"ev.G2", spaces::QxPG2(m), spaces::G2(), [](const CPoint& c) {
                     return CPoint{prim::ev(c[2]), prim::ev(c[3])};
                   }};
}

FormEvaluator form_beta_A(const BundleModel& bundle) {
  const int m = bundle.chart_dimension();
  FormEvaluator b = pullback(form_B(bundle.spec()), pr_path(m));
  FormEvaluator pair = pullback(form_A_theta_hat(bundle), endpoint_map(1, m));
  FormEvaluator beta = b - pair;
  beta.name = "beta_A";
  beta.space = spaces::QxPG(m);
  return beta;
}

FormEvaluator form_alpha_paths(const GroupSpec& spec) {
  return FormEvaluator{"alpha", spaces::PG2(), 1, ValueKind::Scalar,
                       [spec](const Point& p, const std::vector<Tangent>& v) {
                         const SampledPath& q = std::get<SampledPath>(p[1]);
                         return FormValue(2.0 * theta_integral(std::get<PathTangent>(v[0][0]).values, higgs_hat(q), spec));
                       }};
}

FormEvaluator form_alpha(const GroupSpec& spec, int m) {
  FormEvaluator alpha = pullback(form_alpha_paths(spec), projection(spaces::QxPG2(m), spaces::PG2(), {2, 3}, "pr.PG2"));
  alpha.name = "alpha";
  return alpha;
}

Tangent horizontal_lift(const BundleModel& bundle, const Point& q, const Vector& v) {
  validate_point(spaces::Q(bundle.chart_dimension()), q);
  const Matrix& g = group_at(q, 1);
  return Tangent{v, Matrix(-adjoint_action_inverse(g, bundle.base_connection(chart_at(q), v)))};
}

}  // namespace cs2g
