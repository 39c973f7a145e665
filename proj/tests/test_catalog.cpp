#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cs2g/catalog.hpp"

using namespace cs2g;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kN = 64;

// Independent quadrature: weights from the path rule, pairing from killing_form.
double direct_integral(const std::vector<Matrix>& x, const std::vector<Matrix>& y, const GroupSpec& spec) {
  const std::vector<double> w = quadrature_weights(static_cast<int>(x.size()) - 1, PathKind::Path);
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * killing_form(x[k], y[k], spec);
  return s;
}

std::vector<Matrix> left_higgs(const SampledPath& p) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < p.values.size(); ++k) out.push_back(p.values[k].adjoint() * p.derivs[k]);
  return out;
}

std::vector<Matrix> right_higgs(const SampledPath& p) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < p.values.size(); ++k) out.push_back(p.derivs[k] * p.values[k].adjoint());
  return out;
}

PathTangent trig_tangent(const Matrix& e, bool sine) {
  return PathTangent::from_function(kN, PathKind::Loop, [&](double t) {
    return sine ? ExpJet{std::sin(t) * e, std::cos(t) * e} : ExpJet{(1.0 - std::cos(t)) * e, std::sin(t) * e};
  });
}

struct Fixture {
  GroupSpec g = GroupSpec::su(2);
  Rng rng{17};
  SampledPath path() { return random_path(g, kN, PathKind::Path, rng); }
  SampledLoop loop() { return random_path(g, kN, PathKind::Loop, rng); }
  PathTangent path_tangent() { return random_tangent(g, kN, PathKind::Path, rng); }
  PathTangent loop_tangent() { return random_tangent(g, kN, PathKind::Loop, rng); }
  SampledPath one() const { return SampledPath::identity(g, kN, PathKind::Path); }
  SampledLoop one_loop() const { return SampledPath::identity(g, kN, PathKind::Loop); }
  PathTangent zero(PathKind kind) const { return PathTangent::zero(g, kN, kind); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "R: antisymmetry, closed form and the naive integral") {
  const FormEvaluator r = form_R(g);
  const SampledLoop gamma = loop();
  const PathTangent x = loop_tangent();
  const PathTangent y = loop_tangent();
  CHECK(r({gamma}, {{x}, {x}}).scalar() == 0.0);
  CHECK(r({gamma}, {{x}, {y}}).scalar() == doctest::Approx(-r({gamma}, {{y}, {x}}).scalar()));
  auto gap = [&](int n) {
    Rng local(5);
    const SampledLoop l = random_path(g, n, PathKind::Loop, local);
    const PathTangent a = random_tangent(g, n, PathKind::Loop, local);
    const PathTangent b = random_tangent(g, n, PathKind::Loop, local);
    return std::abs(r({l}, {{a}, {b}}).scalar() - R_naive(l, a, b));
  };
  const double gap64 = gap(64), gap128 = gap(128);
  CHECK(gap64 <= 1e-5);
  CHECK(gap128 <= gap64 / 64);

  const auto basis = g.algebra_basis();
  const Matrix e1 = basis[0];
  const Matrix e2 = basis[0] + basis[1];
  const double c = killing_form(e1, e2, g);
  const double value = r({gamma}, {{trig_tangent(e1, true)}, {trig_tangent(e2, false)}}).scalar();
  CHECK(std::abs(value - (kPi * c)) <= 1e-8);
  CHECK(std::abs(R_naive(gamma, trig_tangent(e1, true), trig_tangent(e2, false)) - (kPi * c)) <= 1e-8);
}

TEST_CASE_FIXTURE(Fixture, "nu") {
  const FormEvaluator nu = form_nu(g);
  const SampledLoop gamma = loop();
  const SampledLoop eta = loop();
  const PathTangent x = loop_tangent();
  const PathTangent y = loop_tangent();
  CHECK(nu({gamma, one_loop()}, {{x, y}}).scalar() == 0.0);
  CHECK(nu({gamma, eta}, {{zero(PathKind::Loop), y}}).scalar() == 0.0);
  const double expected = 2.0 * direct_integral(x.values, right_higgs(eta), g);
  CHECK(std::abs(nu({gamma, eta}, {{x, y}}).scalar() - expected) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "epsilon") {
  const FormEvaluator eps = form_epsilon(g);
  const SampledPath p = path();
  const SampledLoop gamma = loop();
  const PathTangent x = path_tangent();
  const PathTangent y = loop_tangent();
  CHECK(eps({p, one_loop()}, {{x, y}}).scalar() == 0.0);
  CHECK(eps({p, gamma}, {{zero(PathKind::Path), y}}).scalar() == 0.0);
  const double expected = 2.0 * direct_integral(x.values, right_higgs(gamma), g);
  CHECK(std::abs(eps({p, gamma}, {{x, y}}).scalar() - expected) <= 1e-12);

  // gamma = exp(sin(theta) Y0) has phi_hat = cos(theta) Y0; X = (1 - cos(theta)) A gives -2 pi <A, Y0>.
  const auto basis = g.algebra_basis();
  const Matrix y0 = basis[2];
  const Matrix a = basis[2] - 0.5 * basis[1];
  const SampledLoop wave = SampledPath::from_exponent(g, kN, PathKind::Loop, [&](double t) {
    return ExpJet{std::sin(t) * y0, std::cos(t) * y0};
  });
  const PathTangent bump = PathTangent::from_function(kN, PathKind::Path, [&](double t) {
    return ExpJet{(1.0 - std::cos(t)) * a, std::sin(t) * a};
  });
  CHECK(std::abs(eps({p, wave}, {{bump, y}}).scalar() + 2 * kPi * killing_form(a, y0, g)) <= 1e-8);
}

TEST_CASE_FIXTURE(Fixture, "B") {
  const FormEvaluator b = form_B(g);
  const SampledPath p = path();
  const PathTangent x = path_tangent();
  const PathTangent y = path_tangent();
  CHECK(b({p}, {{x}, {x}}).scalar() == 0.0);
  const Matrix e = g.algebra_basis()[1];
  const PathTangent u = PathTangent::from_function(kN, PathKind::Path, [&](double t) { return ExpJet{t * e, e}; });
  const PathTangent v = PathTangent::from_function(kN, PathKind::Path, [&](double t) {
    return ExpJet{std::sin(t) * e, std::cos(t) * e};
  });
  CHECK(std::abs(b({one()}, {{u}, {v}}).scalar()) <= 1e-10);
  const double expected = 0.5 * (direct_integral(x.values, y.derivs, g) - direct_integral(y.values, x.derivs, g));
  CHECK(std::abs(b({p}, {{x}, {y}}).scalar() - expected) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "omega") {
  const FormEvaluator omega = form_omega(g);
  const Matrix h = random_group(g, rng);
  const Matrix x = random_algebra(g, rng);
  const Matrix y = random_algebra(g, rng);
  const Matrix z = random_algebra(g, rng);
  CHECK(omega({h}, {{x}, {x}, {y}}).scalar() == 0.0);
  const double expected = killing_form(bracket(x, y), z, g) / 6.0;
  CHECK(std::abs(omega({h}, {{x}, {y}, {z}}).scalar() - expected) <= 1e-14);
  CHECK(std::abs(omega({h}, {{y}, {x}, {z}}).scalar() + expected) <= 1e-14);
  CHECK(std::abs(omega({h}, {{z}, {x}, {y}}).scalar() - expected) <= 1e-14);
}

TEST_CASE_FIXTURE(Fixture, "kappa") {
  const FormEvaluator kappa = form_kappa(g);
  const Matrix a = random_group(g, rng);
  const Matrix h = random_group(g, rng);
  const Matrix x1 = random_algebra(g, rng), y1 = random_algebra(g, rng);
  const Matrix x2 = random_algebra(g, rng), y2 = random_algebra(g, rng);
  const Matrix zero = g.zero();
  CHECK(kappa({a, h}, {{x1, zero}, {x2, zero}}).scalar() == 0.0);
  CHECK(kappa({a, h}, {{zero, y1}, {zero, y2}}).scalar() == 0.0);
  const double expected =
      0.5 * (killing_form(x1, adjoint_action(h, y2), g) - killing_form(x2, adjoint_action(h, y1), g));
  CHECK(std::abs(kappa({a, h}, {{x1, y1}, {x2, y2}}).scalar() - expected) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "rho") {
  const FormEvaluator rho = form_rho(g);
  const SampledPath p = path();
  const SampledLoop gamma = loop();
  const PathTangent x = path_tangent();
  const PathTangent y = loop_tangent();
  CHECK(rho({one(), gamma}, {{zero(PathKind::Path), y}}).scalar() == 0.0);
  CHECK(std::abs(rho({p, one_loop()}, {{x, zero(PathKind::Loop)}}).scalar()) <= 1e-14);
  const std::vector<Matrix> phi = left_higgs(p);
  const std::vector<Matrix> phi_hat_gamma = right_higgs(gamma);
  std::vector<Matrix> inner;
  for (int k = 0; k <= kN; ++k)
    inner.push_back(gamma.values[k] * phi[k] * gamma.values[k].adjoint() - phi[k] - phi_hat_gamma[k]);
  const double expected = 2.0 * (direct_integral(x.values, inner, g) + direct_integral(y.values, phi, g));
  CHECK(std::abs(rho({p, gamma}, {{x, y}}).scalar() - expected) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "epsilon_MS") {
  const FormEvaluator ems = form_epsilon_MS(g);
  const SampledPath p = path();
  const PathTangent x = path_tangent();
  CHECK(ems({one()}, {{x}}).scalar() == 0.0);
  CHECK(ems({p}, {{zero(PathKind::Path)}}).scalar() == 0.0);
  const Matrix end = adjoint_action(ev_2pi(p), x.values.back());
  const std::vector<Matrix> phi = left_higgs(p);
  const GridSpec grid(kN);
  std::vector<Matrix> weighted;
  for (int k = 0; k <= kN; ++k) weighted.push_back(grid.theta(k) / (2 * kPi) * end);
  const double expected = 2.0 * direct_integral(weighted, phi, g);
  CHECK(std::abs(ems({p}, {{x}}).scalar() - expected) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "property: one-forms are linear and two-forms alternate") {
  const SampledPath p = path();
  const SampledLoop gamma = loop();
  const PathTangent x1 = path_tangent(), x2 = path_tangent();
  const PathTangent y1 = loop_tangent(), y2 = loop_tangent();
  const double a = 0.7, b = -1.3;
  for (const FormEvaluator& f : {form_epsilon(g), form_rho(g)}) {
    const double lhs = f({p, gamma}, {{a * x1 + b * x2, a * y1 + b * y2}}).scalar();
    const double rhs = a * f({p, gamma}, {{x1, y1}}).scalar() + b * f({p, gamma}, {{x2, y2}}).scalar();
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
  const FormEvaluator ems = form_epsilon_MS(g);
  CHECK(std::abs(ems({p}, {{a * x1 + b * x2}}).scalar() - a * ems({p}, {{x1}}).scalar() - b * ems({p}, {{x2}}).scalar()) <= 1e-10);
  const FormEvaluator bf = form_B(g);
  CHECK(std::abs(bf({p}, {{x1}, {x2}}).scalar() + bf({p}, {{x2}, {x1}}).scalar()) <= 1e-10);
  const FormEvaluator r = form_R(g);
  CHECK(std::abs(r({gamma}, {{y1}, {y2}}).scalar() + r({gamma}, {{y2}, {y1}}).scalar()) <= 1e-10);
}

TEST_CASE_FIXTURE(Fixture, "adjoint phase trivial cases and agreement") {
  const SampledPath p = path();
  const PathTangent zero_loop = zero(PathKind::Loop);
  const LoopFamily constant = polynomial_family(g, zero_loop, zero_loop);
  const AdjointPhase flat = adjoint_phase(p, constant, 16);
  CHECK(flat.double_integral == 0.0);
  CHECK(std::abs(flat.fiber_integral) <= 1e-14);
  const LoopFamily f = random_family(g, kN, rng);
  const AdjointPhase still = adjoint_phase(one(), f, 16);
  CHECK(still.double_integral == 0.0);
  CHECK(std::abs(still.fiber_integral) <= 1e-14);
  const AdjointPhase generic = adjoint_phase(p, f, 64);
  CHECK(std::abs(generic.double_integral - generic.fiber_integral) <=
        1e-6 * std::max(1.0, std::abs(generic.fiber_integral)));
  CHECK(std::abs(generic.fiber_integral) > 1e-3);
}

TEST_CASE("catalog rows and JSON round trip") {
  const auto entries = catalog();
  int rows = 0;
  for (const auto& e : entries) rows += e.table_row ? 1 : 0;
  CHECK(rows == 16);
  for (const auto& e : entries) {
    if (e.name == "mu" || e.name == "nabla") {
      CHECK(e.status == EntryStatus::DescendedOnly);
    } else {
      CHECK(e.status != EntryStatus::DescendedOnly);
    }
  }
  const auto back = catalog_from_json(catalog_json());
  REQUIRE(back.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(back[i].name == entries[i].name);
    CHECK(back[i].symbol == entries[i].symbol);
    CHECK(back[i].degree == entries[i].degree);
    CHECK(back[i].status == entries[i].status);
    CHECK(back[i].table_row == entries[i].table_row);
  }
}
