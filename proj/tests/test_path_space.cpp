#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cs2g/path_space.hpp"

using namespace cs2g;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double max_abs(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double out = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) out = std::max(out, max_abs(a[k] - b[k]));
  return out;
}

std::vector<Matrix> sampled(int n, const std::function<Matrix(double)>& f) {
  std::vector<Matrix> out;
  const GridSpec grid(n);
  for (int k = 0; k <= n; ++k) out.push_back(f(grid.theta(k)));
  return out;
}

std::vector<double> sampled_scalar(int n, const std::function<double(double)>& f) {
  std::vector<double> out;
  const GridSpec grid(n);
  for (int k = 0; k <= n; ++k) out.push_back(f(grid.theta(k)));
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK(GridSpec(16).nodes() == 17);
  CHECK(GridSpec(128).theta(64) == doctest::Approx(kPi));
  CHECK(code_of([] { GridSpec(8); }) == ErrorCode::GridTooCoarse);
  CHECK(code_of([] { GridSpec(34 - 1); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { theta_derivative(std::vector<double>(7, 0.0), PathKind::Path); }) == ErrorCode::GridTooCoarse);
}

TEST_CASE("theta derivative of constant and trigonometric grids") {
  const GroupSpec su2 = GroupSpec::su(2);
  const Matrix e = su2.algebra_basis()[0];
  for (PathKind kind : {PathKind::Path, PathKind::Loop}) {
    const auto zeros = theta_derivative(sampled(32, [&](double) { return Matrix(e); }), kind);
    for (const Matrix& z : zeros) CHECK(max_abs(z) <= 1e-12);
    const auto d = theta_derivative(sampled(128, [&](double t) { return Matrix(std::sin(t) * e); }), kind);
    CHECK(max_abs(d, sampled(128, [&](double t) { return Matrix(std::cos(t) * e); })) <= 1e-6);
  }
}

TEST_CASE("theta derivative converges at fourth order") {
  for (PathKind kind : {PathKind::Path, PathKind::Loop}) {
    auto err = [&](int n) {
      const auto d = theta_derivative(sampled_scalar(n, [](double t) { return std::sin(4 * t); }), kind);
      const auto exact = sampled_scalar(n, [](double t) { return 4 * std::cos(4 * t); });
      double e = 0.0;
      for (int k = 0; k <= n; ++k) e = std::max(e, std::abs(d[k] - exact[k]));
      return e;
    };
    CHECK(std::log2(err(64) / err(128)) >= 3.8);
  }
}

TEST_CASE("quadrature accuracy") {
  CHECK(quadrature(std::vector<double>(65, 1.0), PathKind::Loop) == doctest::Approx(2 * kPi).epsilon(1e-14));
  const double s2 = quadrature(sampled_scalar(64, [](double t) { return std::sin(t) * std::sin(t); }), PathKind::Loop);
  CHECK(std::abs(s2 - kPi) <= 1e-10);
  const double lin = quadrature(sampled_scalar(128, [](double t) { return t; }), PathKind::Path);
  CHECK(std::abs(lin - 2 * kPi * kPi) <= 1e-3);
  // The path rule integrates polynomials up to degree 7 exactly.
  for (int deg = 0; deg <= 7; ++deg) {
    const double exact = std::pow(2 * kPi, deg + 1) / (deg + 1);
    const double q = quadrature(sampled_scalar(32, [deg](double t) { return std::pow(t, deg); }), PathKind::Path);
    CHECK(std::abs(q - exact) <= 1e-11 * exact);
  }
  auto err = [](int n) {
    return std::abs(quadrature(sampled_scalar(n, [](double t) { return std::exp(t / 3); }), PathKind::Path) -
                    3 * (std::exp(2 * kPi / 3) - 1));
  };
  CHECK(std::log2(err(16) / err(32)) >= 7.5);
}

TEST_CASE("Higgs fields") {
  const GroupSpec su2 = GroupSpec::su(2);
  const Matrix x = su2.algebra_basis()[1] + 0.5 * su2.algebra_basis()[2];
  for (const auto& phi : higgs(SampledPath::identity(su2, 32, PathKind::Path))) CHECK(max_abs(phi) == 0.0);

  std::vector<Matrix> values;
  const GridSpec grid(128);
  for (int k = 0; k <= 128; ++k) values.push_back(exp_algebra(grid.theta(k) * x, su2));
  const SampledPath p = SampledPath::from_samples(su2, PathKind::Path, values);
  for (const auto& phi : higgs(p)) CHECK(max_abs(phi - x) <= 1e-6);
  const SampledPath exact = SampledPath::from_exponent(su2, 128, PathKind::Path,
                                                       [&](double t) { return ExpJet{t * x, x}; });
  for (const auto& phi : higgs(exact)) CHECK(max_abs(phi - x) <= 1e-12);

  Rng rng(3);
  const SampledLoop gamma = random_path(su2, 64, PathKind::Loop, rng);
  const auto phi = higgs(gamma);
  const auto phi_hat = higgs_hat(gamma);
  for (int k = 0; k <= 64; ++k) CHECK(max_abs(phi_hat[k] - adjoint_action(gamma.values[k], phi[k])) <= 1e-12);
}

TEST_CASE("property: Higgs field of a pointwise product") {
  Rng rng(11);
  for (const GroupSpec& g : {GroupSpec::su(2), GroupSpec::su(3), GroupSpec::so(5)}) {
    const SampledPath p = random_path(g, 64, PathKind::Path, rng);
    const SampledPath q = random_path(g, 64, PathKind::Path, rng);
    const auto pq = higgs(path_multiply(p, q));
    const auto hp = higgs(p);
    const auto hq = higgs(q);
    for (int k = 0; k <= 64; ++k)
      CHECK(max_abs(pq[k] - hq[k] - adjoint_action_inverse(q.values[k], hp[k])) <= 1e-10);
  }
}

TEST_CASE("group operations on paths") {
  Rng rng(4);
  const GroupSpec g = GroupSpec::su(3);
  const SampledPath p = random_path(g, 32, PathKind::Path, rng);
  const SampledLoop gamma = random_path(g, 32, PathKind::Loop, rng);
  const SampledPath one = path_multiply(p, path_inverse(p));
  for (int k = 0; k <= 32; ++k) {
    CHECK(max_abs(one.values[k] - g.identity()) <= 1e-12);
    CHECK(max_abs(one.derivs[k]) <= 1e-12);
  }
  const SampledLoop same = loop_adjoint_action(SampledPath::identity(g, 32, PathKind::Path), gamma);
  for (int k = 0; k <= 32; ++k) CHECK(max_abs(same.values[k] - gamma.values[k]) <= 1e-14);
  const SampledLoop conj = loop_adjoint_action(p, gamma);
  CHECK(conj.kind == PathKind::Loop);
  CHECK(max_abs(ev_2pi(conj) - g.identity()) <= 1e-12);
  CHECK(max_abs(ev_2pi(p) - p.values.back()) == 0.0);
  CHECK(code_of([&] { path_multiply(p, random_path(g, 64, PathKind::Path, rng)); }) == ErrorCode::InvalidInput);
}

TEST_CASE("semidirect multiplication from primitives") {
  Rng rng(8);
  const GroupSpec g = GroupSpec::su(2);
  const SampledPath p = random_path(g, 32, PathKind::Path, rng);
  const SampledPath q = random_path(g, 32, PathKind::Path, rng);
  const SampledLoop gamma = random_path(g, 32, PathKind::Loop, rng);
  const SampledLoop eta = random_path(g, 32, PathKind::Loop, rng);
  const SampledPath first = path_multiply(p, q);
  const SampledLoop second = path_multiply(loop_adjoint_action(path_inverse(q), gamma), eta);
  // (p gamma)(q eta) = (pq)(q^{-1} gamma q eta) pointwise.
  for (int k = 0; k <= 32; ++k) {
    const Matrix lhs = p.values[k] * gamma.values[k] * q.values[k] * eta.values[k];
    CHECK(max_abs(first.values[k] * second.values[k] - lhs) <= 1e-12);
  }
}

TEST_CASE("path validation") {
  Rng rng(2);
  const GroupSpec g = GroupSpec::su(2);
  SampledPath p = random_path(g, 32, PathKind::Path, rng);
  p.validate();
  SampledPath shifted = p;
  shifted.values[0] = exp_algebra(g.algebra_basis()[0], g);
  CHECK(code_of([&] { shifted.validate(); }) == ErrorCode::InvalidInput);
  SampledPath open = p;
  open.kind = PathKind::Loop;
  CHECK(code_of([&] { open.validate(); }) == ErrorCode::InvalidInput);
  random_path(g, 32, PathKind::Loop, rng).validate();
}

TEST_CASE("loop of loops") {
  Rng rng(6);
  const GroupSpec g = GroupSpec::su(2);
  const LoopFamily f = random_family(g, 32, rng);
  const LoopOfLoops grid = LoopOfLoops::sample(f, 16);
  grid.validate();
  CHECK(grid.slices.size() == 17u);
  LoopOfLoops broken = grid;
  broken.slices[0] = grid.slices[3];
  CHECK(code_of([&] { broken.validate(); }) == ErrorCode::InvalidInput);
}

TEST_CASE("property: right Higgs field and right Maurer-Cartan derivatives") {
  Rng rng(21);
  const GroupSpec g = GroupSpec::su(2);
  const int n = 256;
  const SampledLoop gamma = random_path(g, n, PathKind::Loop, rng);
  const PathTangent x = random_tangent(g, n, PathKind::Loop, rng);
  const double s = 1e-4;
  const auto plus = higgs_hat(move(gamma, x, s));
  const auto minus = higgs_hat(move(gamma, x, -s));
  const auto phi_hat = higgs_hat(gamma);
  std::vector<Matrix> theta_hat;
  for (int k = 0; k <= n; ++k) theta_hat.push_back(adjoint_action(gamma.values[k], x.values[k]));
  const auto d_theta_hat = theta_derivative(theta_hat, PathKind::Loop);
  double err = 0.0, scale = 0.0, err2 = 0.0, scale2 = 0.0;
  for (int k = 0; k <= n; ++k) {
    const Matrix ad_dx = adjoint_action(gamma.values[k], x.derivs[k]);
    err = std::max(err, max_abs((plus[k] - minus[k]) / (2 * s) - ad_dx));
    scale = std::max(scale, max_abs(ad_dx));
    const Matrix rhs = ad_dx - bracket(theta_hat[k], phi_hat[k]);
    err2 = std::max(err2, max_abs(d_theta_hat[k] - rhs));
    scale2 = std::max(scale2, max_abs(rhs));
  }
  CHECK(err / scale <= 1e-5);
  CHECK(err2 / scale2 <= 1e-4);
}
