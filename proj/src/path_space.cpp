#include "cs2g/path_space.hpp"

#include <cmath>
#include <numbers>

namespace cs2g {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_nodes(std::size_t a, std::size_t b, const char* where) {
  if (a != b) fail(ErrorCode::InvalidInput, std::string("grid mismatch in ") + where);
}

template <class T>
T zero_like(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return 0.0;
  } else {
    return T::Zero(x.rows(), x.cols());
  }
}

template <class T>
std::vector<T> differentiate(const std::vector<T>& f, PathKind kind) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 8) fail(ErrorCode::GridTooCoarse, "theta_derivative needs at least 8 intervals");
  const double h = kTwoPi / n;
  const double c = 1.0 / (12.0 * h);
  std::vector<T> d(f.size(), zero_like(f[0]));
  if (kind == PathKind::Loop) {
    auto at = [&](int k) -> const T& { return f[((k % n) + n) % n]; };
    for (int k = 0; k < n; ++k)
      d[k] = c * (at(k - 2) - 8.0 * at(k - 1) + 8.0 * at(k + 1) - at(k + 2));
    d[n] = d[0];
    return d;
  }
  for (int k = 2; k <= n - 2; ++k) d[k] = c * (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]);
  const double b = 1.0 / (60.0 * h);
  d[0] = b * (-137.0 * f[0] + 300.0 * f[1] - 300.0 * f[2] + 200.0 * f[3] - 75.0 * f[4] + 12.0 * f[5]);
  d[1] = b * (-12.0 * f[0] - 65.0 * f[1] + 120.0 * f[2] - 60.0 * f[3] + 20.0 * f[4] - 3.0 * f[5]);
  d[n] = b * (137.0 * f[n] - 300.0 * f[n - 1] + 300.0 * f[n - 2] - 200.0 * f[n - 3] + 75.0 * f[n - 4] - 12.0 * f[n - 5]);
  d[n - 1] = b * (12.0 * f[n] + 65.0 * f[n - 1] - 120.0 * f[n - 2] + 60.0 * f[n - 3] - 20.0 * f[n - 4] + 3.0 * f[n - 5]);
  return d;
}

}  // namespace

GridSpec::GridSpec(int n) : n_(n) {
  if (n < 16) fail(ErrorCode::GridTooCoarse, "grid needs N >= 16, got " + std::to_string(n));
  if (n % 2 != 0) fail(ErrorCode::InvalidInput, "grid N must be even, got " + std::to_string(n));
}

double GridSpec::step() const noexcept { return kTwoPi / n_; }

std::vector<Matrix> theta_derivative(const std::vector<Matrix>& grid, PathKind kind) {
  return differentiate(grid, kind);
}

std::vector<double> theta_derivative(const std::vector<double>& grid, PathKind kind) {
  return differentiate(grid, kind);
}

SampledPath SampledPath::identity(const GroupSpec& spec, int n, PathKind kind) {
  GridSpec grid(n);
  return SampledPath{spec, kind, std::vector<Matrix>(grid.nodes(), spec.identity()),
                     std::vector<Matrix>(grid.nodes(), spec.zero())};
}

SampledPath SampledPath::from_samples(const GroupSpec& spec, PathKind kind, std::vector<Matrix> values) {
  if (values.empty()) fail(ErrorCode::InvalidInput, "empty path");
  GridSpec grid(static_cast<int>(values.size()) - 1);
  SampledPath p{spec, kind, std::move(values), {}};
  p.derivs = theta_derivative(p.values, kind);
  p.validate();
  return p;
}

SampledPath SampledPath::from_exponent(const GroupSpec& spec, int n, PathKind kind,
                                       const std::function<ExpJet(double)>& v_and_dv) {
  GridSpec grid(n);
  SampledPath p{spec, kind, {}, {}};
  p.values.reserve(grid.nodes());
  p.derivs.reserve(grid.nodes());
  for (int k = 0; k <= n; ++k) {
    const ExpJet v = v_and_dv(grid.theta(k));
    ExpJet e = exp_jet(v.value, v.derivative);
    if (spec.group_drift(e.value) > 1e-9) e.value = spec.project_group(e.value);
    p.values.push_back(std::move(e.value));
    p.derivs.push_back(std::move(e.derivative));
  }
  if (kind == PathKind::Loop) p.values[n] = spec.identity();
  p.values[0] = spec.identity();
  return p;
}

void SampledPath::validate(double tol) const {
  if (values.size() != derivs.size()) fail(ErrorCode::InvalidInput, "path values/derivatives size mismatch");
  GridSpec grid(N());
  const Matrix one = spec.identity();
  if ((values.front() - one).cwiseAbs().maxCoeff() > tol)
    fail(ErrorCode::InvalidInput, "path is not based at the identity");
  if (kind == PathKind::Loop && (values.back() - one).cwiseAbs().maxCoeff() > tol)
    fail(ErrorCode::InvalidInput, "loop does not close at the identity");
  for (const Matrix& g : values)
    if (!spec.in_group(g, tol)) fail(ErrorCode::InvalidInput, "path sample is off the group");
}

PathTangent PathTangent::zero(const GroupSpec& spec, int n, PathKind kind) {
  GridSpec grid(n);
  return PathTangent{kind, std::vector<Matrix>(grid.nodes(), spec.zero()),
                     std::vector<Matrix>(grid.nodes(), spec.zero())};
}

PathTangent PathTangent::from_samples(PathKind kind, std::vector<Matrix> values) {
  if (values.empty()) fail(ErrorCode::InvalidInput, "empty tangent");
  GridSpec grid(static_cast<int>(values.size()) - 1);
  PathTangent x{kind, std::move(values), {}};
  x.derivs = theta_derivative(x.values, kind);
  return x;
}

PathTangent PathTangent::from_function(int n, PathKind kind, const std::function<ExpJet(double)>& x_and_dx) {
  GridSpec grid(n);
  PathTangent x{kind, {}, {}};
  for (int k = 0; k <= n; ++k) {
    ExpJet v = x_and_dx(grid.theta(k));
    x.values.push_back(std::move(v.value));
    x.derivs.push_back(std::move(v.derivative));
  }
  return x;
}

PathTangent& PathTangent::operator+=(const PathTangent& other) {
  require_nodes(values.size(), other.values.size(), "tangent sum");
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] += other.values[k];
    derivs[k] += other.derivs[k];
  }
  return *this;
}

PathTangent& PathTangent::operator-=(const PathTangent& other) {
  require_nodes(values.size(), other.values.size(), "tangent difference");
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] -= other.values[k];
    derivs[k] -= other.derivs[k];
  }
  return *this;
}

PathTangent& PathTangent::operator*=(double s) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] *= s;
    derivs[k] *= s;
  }
  return *this;
}

PathTangent operator+(PathTangent a, const PathTangent& b) { return a += b; }
PathTangent operator-(PathTangent a, const PathTangent& b) { return a -= b; }
PathTangent operator*(double s, PathTangent a) { return a *= s; }

PathTangent higgs_jet(const SampledPath& p) {
  // phi = p^{-1} p',  phi' = -phi^2 + p^{-1} p''; p'' is not stored, so the
  // derivative is formed by differencing phi itself.
  PathTangent phi{p.kind, {}, {}};
  phi.values.reserve(p.values.size());
  for (std::size_t k = 0; k < p.values.size(); ++k)
    phi.values.push_back(p.spec.project_algebra(p.values[k].adjoint() * p.derivs[k]));
  phi.derivs = theta_derivative(phi.values, p.kind);
  return phi;
}

std::vector<Matrix> higgs(const SampledPath& p) {
  std::vector<Matrix> phi;
  phi.reserve(p.values.size());
  for (std::size_t k = 0; k < p.values.size(); ++k)
    phi.push_back(p.spec.project_algebra(p.values[k].adjoint() * p.derivs[k]));
  return phi;
}

std::vector<Matrix> higgs_hat(const SampledPath& p) {
  std::vector<Matrix> phi;
  phi.reserve(p.values.size());
  for (std::size_t k = 0; k < p.values.size(); ++k)
    phi.push_back(p.spec.project_algebra(p.derivs[k] * p.values[k].adjoint()));
  return phi;
}

PathTangent higgs_hat_jet(const SampledPath& p) {
  PathTangent phi{p.kind, higgs_hat(p), {}};
  phi.derivs = theta_derivative(phi.values, p.kind);
  return phi;
}

SampledPath path_multiply(const SampledPath& p, const SampledPath& q) {
  require_nodes(p.values.size(), q.values.size(), "path_multiply");
  if (!(p.spec == q.spec)) fail(ErrorCode::InvalidInput, "path_multiply: group mismatch");
  const PathKind kind = (p.kind == PathKind::Loop && q.kind == PathKind::Loop) ? PathKind::Loop : PathKind::Path;
  SampledPath r{p.spec, kind, {}, {}};
  r.values.reserve(p.values.size());
  r.derivs.reserve(p.values.size());
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    r.values.push_back(p.values[k] * q.values[k]);
    r.derivs.push_back(p.derivs[k] * q.values[k] + p.values[k] * q.derivs[k]);
  }
  return r;
}

SampledPath path_inverse(const SampledPath& p) {
  SampledPath r{p.spec, p.kind, {}, {}};
  r.values.reserve(p.values.size());
  r.derivs.reserve(p.values.size());
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    Matrix inv = p.values[k].adjoint();
    r.derivs.push_back(-inv * p.derivs[k] * inv);
    r.values.push_back(std::move(inv));
  }
  return r;
}

SampledLoop loop_adjoint_action(const SampledPath& q, const SampledLoop& gamma) {
  SampledLoop r = path_multiply(path_multiply(q, gamma), path_inverse(q));
  r.kind = gamma.kind;
  return r;
}

Matrix ev_2pi(const SampledPath& p) { return p.values.back(); }

SampledPath move(const SampledPath& p, const PathTangent& x, double s) {
  require_nodes(p.values.size(), x.values.size(), "move");
  SampledPath r{p.spec, p.kind, {}, {}};
  r.values.reserve(p.values.size());
  r.derivs.reserve(p.values.size());
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    const ExpJet e = exp_jet(s * x.values[k], s * x.derivs[k]);
    r.values.push_back(p.values[k] * e.value);
    r.derivs.push_back(p.derivs[k] * e.value + p.values[k] * e.derivative);
  }
  return r;
}

PathTangent adjoint_action(const SampledPath& p, const PathTangent& x) {
  require_nodes(p.values.size(), x.values.size(), "adjoint_action");
  PathTangent r{x.kind, {}, {}};
  r.values.reserve(x.values.size());
  r.derivs.reserve(x.values.size());
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    const Matrix& g = p.values[k];
    const Matrix gi = g.adjoint();
    const Matrix dgi = -gi * p.derivs[k] * gi;
    r.values.push_back(g * x.values[k] * gi);
    r.derivs.push_back(p.derivs[k] * x.values[k] * gi + g * x.derivs[k] * gi + g * x.values[k] * dgi);
  }
  return r;
}

PathTangent adjoint_action_inverse(const SampledPath& p, const PathTangent& x) {
  return adjoint_action(path_inverse(p), x);
}

PathTangent bracket(const PathTangent& x, const PathTangent& y) {
  require_nodes(x.values.size(), y.values.size(), "bracket");
  PathTangent r{x.kind, {}, {}};
  r.values.reserve(x.values.size());
  r.derivs.reserve(x.values.size());
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    const Matrix& a = x.values[k];
    const Matrix& b = y.values[k];
    r.values.push_back(a * b - b * a);
    r.derivs.push_back(x.derivs[k] * b + a * y.derivs[k] - y.derivs[k] * a - b * x.derivs[k]);
  }
  return r;
}

PathTangent project_algebra(const GroupSpec& spec, PathTangent x) {
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    x.values[k] = spec.project_algebra(x.values[k]);
    x.derivs[k] = spec.project_algebra(x.derivs[k]);
  }
  return x;
}

std::vector<double> quadrature_weights(int n, PathKind kind) {
  GridSpec grid(n);
  const double h = grid.step();
  std::vector<double> w(grid.nodes(), h);
  if (kind == PathKind::Loop) {
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
  }
  constexpr double ends[7] = {5257.0 / 17280.0, 22081.0 / 15120.0, 54851.0 / 120960.0, 103.0 / 70.0,
                              89437.0 / 120960.0, 16367.0 / 15120.0, 23917.0 / 24192.0};
  for (int i = 0; i < 7; ++i) {
    w[i] = ends[i] * h;
    w[n - i] = ends[i] * h;
  }
  return w;
}

double quadrature(const std::vector<double>& values, PathKind kind) {
  const std::vector<double> w = quadrature_weights(static_cast<int>(values.size()) - 1, kind);
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) sum += w[k] * values[k];
  return sum;
}

double integrate_pairing(const std::vector<Matrix>& x, const std::vector<Matrix>& y,
                         const GroupSpec& spec, PathKind kind) {
  require_nodes(x.size(), y.size(), "integrate_pairing");
  const std::vector<double> w = quadrature_weights(static_cast<int>(x.size()) - 1, kind);
  const double c = spec.killing_coefficient();
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) sum += w[k] * pairing(x[k], y[k], c);
  return sum;
}

namespace {

// v(theta) = sum_m a_m sin(m theta) + b_m (1 - cos(m theta)) + drift * theta / 2 pi.
struct FourierExponent {
  std::vector<Matrix> a, b;
  Matrix c;

  ExpJet operator()(double theta) const {
    Matrix v = c * (theta / kTwoPi);
    Matrix dv = c / kTwoPi;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double m = static_cast<double>(i + 1);
      v += std::sin(m * theta) * a[i] + (1.0 - std::cos(m * theta)) * b[i];
      dv += m * std::cos(m * theta) * a[i] + m * std::sin(m * theta) * b[i];
    }
    return {v, dv};
  }
};

FourierExponent random_exponent(const GroupSpec& spec, PathKind kind, Rng& rng,
                                const RandomPathOptions& options) {
  FourierExponent e;
  for (int m = 1; m <= options.modes; ++m) {
    e.a.push_back(random_algebra(spec, rng, options.amplitude / m));
    e.b.push_back(random_algebra(spec, rng, options.amplitude / m));
  }
  e.c = kind == PathKind::Path ? random_algebra(spec, rng, options.drift) : spec.zero();
  return e;
}

}  // namespace

SampledPath random_path(const GroupSpec& spec, int n, PathKind kind, Rng& rng,
                        const RandomPathOptions& options) {
  const FourierExponent e = random_exponent(spec, kind, rng, options);
  return SampledPath::from_exponent(spec, n, kind, e);
}

PathTangent random_tangent(const GroupSpec& spec, int n, PathKind kind, Rng& rng,
                           const RandomPathOptions& options) {
  RandomPathOptions o = options;
  o.amplitude = 2.0 * options.amplitude;
  const FourierExponent e = random_exponent(spec, kind, rng, o);
  PathTangent x = PathTangent::from_function(n, kind, e);
  x.values.front() = spec.zero();
  if (kind == PathKind::Loop) x.values.back() = spec.zero();
  return x;
}

LoopFamily polynomial_family(const GroupSpec& spec, const PathTangent& v1, const PathTangent& v2) {
  const int n = v1.N();
  require_nodes(v1.values.size(), v2.values.size(), "polynomial_family");
  LoopFamily f{spec, n, {}};
  f.at = [spec, v1, v2, n](double t) {
    const double tau = t / kTwoPi;
    SampledLoop loop{spec, PathKind::Loop, {}, {}};
    for (int k = 0; k <= n; ++k) {
      ExpJet e = exp_jet(tau * v1.values[k] + tau * tau * v2.values[k],
                         tau * v1.derivs[k] + tau * tau * v2.derivs[k]);
      loop.values.push_back(std::move(e.value));
      loop.derivs.push_back(std::move(e.derivative));
    }
    loop.values.front() = spec.identity();
    loop.values.back() = spec.identity();
    return loop;
  };
  return f;
}

LoopFamily random_family(const GroupSpec& spec, int n, Rng& rng) {
  const PathTangent v1 = random_tangent(spec, n, PathKind::Loop, rng);
  const PathTangent v2 = 0.5 * random_tangent(spec, n, PathKind::Loop, rng);
  return polynomial_family(spec, v1, v2);
}

FamilyTangent random_family_tangent(const GroupSpec& spec, int n, Rng& rng) {
  const PathTangent u1 = random_tangent(spec, n, PathKind::Loop, rng);
  const PathTangent u2 = random_tangent(spec, n, PathKind::Loop, rng);
  return FamilyTangent{[u1, u2](double t) {
    const double tau = t / kTwoPi;
    return tau * u1 + (tau * tau) * u2;
  }};
}

LoopFamily move(const LoopFamily& f, const FamilyTangent& x, double s) {
  LoopFamily g{f.spec, f.n, {}};
  g.at = [f, x, s](double t) {
    SampledLoop loop = move(f.at(t), x.at(t), s);
    loop.kind = PathKind::Loop;
    return loop;
  };
  return g;
}

FamilyTangent operator+(const FamilyTangent& a, const FamilyTangent& b) {
  return FamilyTangent{[a, b](double t) { return a.at(t) + b.at(t); }};
}

FamilyTangent operator*(double s, const FamilyTangent& a) {
  return FamilyTangent{[a, s](double t) { return s * a.at(t); }};
}

FamilyTangent bracket(const FamilyTangent& x, const FamilyTangent& y) {
  return FamilyTangent{[x, y](double t) { return bracket(x.at(t), y.at(t)); }};
}

PathTangent log_t_derivative(const LoopFamily& f, double t, double ht) {
  const SampledLoop center = f.at(t);
  const SampledLoop p1 = f.at(t + ht), m1 = f.at(t - ht);
  const SampledLoop p2 = f.at(t + 2 * ht), m2 = f.at(t - 2 * ht);
  const double c = 1.0 / (12.0 * ht);
  PathTangent w{PathKind::Loop, {}, {}};
  for (std::size_t k = 0; k < center.values.size(); ++k) {
    const Matrix ft = c * (m2.values[k] - 8.0 * m1.values[k] + 8.0 * p1.values[k] - p2.values[k]);
    const Matrix ftheta_t = c * (m2.derivs[k] - 8.0 * m1.derivs[k] + 8.0 * p1.derivs[k] - p2.derivs[k]);
    const Matrix gi = center.values[k].adjoint();
    w.values.push_back(f.spec.project_algebra(gi * ft));
    w.derivs.push_back(f.spec.project_algebra(-gi * center.derivs[k] * gi * ft + gi * ftheta_t));
  }
  return w;
}

LoopOfLoops LoopOfLoops::sample(const LoopFamily& f, int n_t) {
  LoopOfLoops grid{GridSpec(n_t), {}};
  grid.slices.reserve(grid.grid_t.nodes());
  for (int k = 0; k <= n_t; ++k) grid.slices.push_back(f.at(grid.grid_t.theta(k)));
  grid.validate();
  return grid;
}

void LoopOfLoops::validate(double tol) const {
  if (static_cast<int>(slices.size()) != grid_t.nodes()) fail(ErrorCode::InvalidInput, "loop-of-loops slice count mismatch");
  for (const SampledLoop& s : slices) s.validate(tol);
  const Matrix one = slices.front().spec.identity();
  for (const Matrix& g : slices.front().values)
    if ((g - one).cwiseAbs().maxCoeff() > tol)
      fail(ErrorCode::InvalidInput, "loop-of-loops base slice is not the constant identity loop");
}

}  // namespace cs2g
