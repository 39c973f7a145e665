#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cs2g/lie.hpp"

using namespace cs2g;

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> I{0.0, 1.0};

Matrix diag_i() {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = I;
  x(1, 1) = -I;
  return x;
}

std::vector<GroupSpec> groups() {
  return {GroupSpec::su(2), GroupSpec::su(3), GroupSpec::so(3), GroupSpec::so(5), GroupSpec::sp(1), GroupSpec::sp(2)};
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("killing coefficients follow the normalized table") {
  CHECK(GroupSpec::su(2).killing_coefficient() == doctest::Approx(-1.0 / (4 * kPi)));
  CHECK(GroupSpec::su(3).killing_coefficient() == doctest::Approx(-1.0 / (4 * kPi)));
  CHECK(GroupSpec::so(3).killing_coefficient() == doctest::Approx(-1.0 / (16 * kPi)));
  CHECK(GroupSpec::so(5).killing_coefficient() == doctest::Approx(-1.0 / (8 * kPi)));
  CHECK(GroupSpec::so(7).killing_coefficient() == doctest::Approx(-1.0 / (8 * kPi)));
  CHECK(GroupSpec::sp(1).killing_coefficient() == doctest::Approx(-1.0 / (4 * kPi)));
  CHECK(GroupSpec::sp(3).killing_coefficient() == doctest::Approx(-1.0 / (4 * kPi)));
}

TEST_CASE("su2 pairing of diag(i,-i) with itself") {
  const GroupSpec su2 = GroupSpec::su(2);
  const Matrix x = diag_i();
  CHECK(killing_form(x, x, su2) == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-14));
  CHECK(4 * kPi * killing_form(x, x, su2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(killing_form(x, su2.zero(), su2) == 0.0);
}

TEST_CASE("dimension mismatch is invalid input") {
  const GroupSpec su2 = GroupSpec::su(2);
  try {
    killing_form(diag_i(), Matrix::Zero(3, 3), su2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}

TEST_CASE("group names parse and unsupported ones are rejected") {
  CHECK(GroupSpec::parse("SU3") == GroupSpec::su(3));
  CHECK(GroupSpec::parse("so5") == GroupSpec::so(5));
  CHECK(GroupSpec::parse("sp2") == GroupSpec::sp(2));
  for (const char* bad : {"so4", "g2", "su", "su0", "xx3"}) {
    try {
      GroupSpec::parse(bad);
      FAIL("expected UnknownGroup for " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownGroup);
    }
  }
}

TEST_CASE("algebra dimensions and bases") {
  CHECK(GroupSpec::su(2).algebra_dimension() == 3);
  CHECK(GroupSpec::su(3).algebra_dimension() == 8);
  CHECK(GroupSpec::so(5).algebra_dimension() == 10);
  CHECK(GroupSpec::sp(2).algebra_dimension() == 10);
  for (const GroupSpec& g : groups()) {
    const auto basis = g.algebra_basis();
    CHECK(static_cast<int>(basis.size()) == g.algebra_dimension());
    for (const Matrix& b : basis) CHECK(g.in_algebra(b));
  }
}

TEST_CASE("trivial bracket, Ad and Maurer-Cartan values") {
  Rng rng(1);
  for (const GroupSpec& g : groups()) {
    const Matrix x = random_algebra(g, rng);
    const Matrix h = random_group(g, rng);
    CHECK(max_abs(bracket(x, x)) == 0.0);
    CHECK(max_abs(adjoint_action(g.identity(), x) - x) == 0.0);
    CHECK(max_abs(maurer_cartan_left(h, x) - x) == 0.0);
    CHECK(max_abs(maurer_cartan_right(g.identity(), x) - x) == 0.0);
    CHECK(g.in_algebra(x));
    CHECK(g.in_group(h));
  }
}

TEST_CASE("exp of pi diag(i,-i) is minus the identity") {
  const GroupSpec su2 = GroupSpec::su(2);
  const Matrix e = exp_algebra(kPi * diag_i(), su2);
  CHECK(max_abs(e + su2.identity()) < 1e-14);
}

TEST_CASE("right Maurer-Cartan at a quarter turn is explicit conjugation") {
  const GroupSpec su2 = GroupSpec::su(2);
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = std::exp(I * (kPi / 2));
  g(1, 1) = std::exp(-I * (kPi / 2));
  CHECK(max_abs(exp_algebra((kPi / 2) * diag_i(), su2) - g) < 1e-14);
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = -1.0;
  Matrix expected(2, 2);
  expected << 0.0, g(0, 0) * x(0, 1) * std::conj(g(1, 1)), g(1, 1) * x(1, 0) * std::conj(g(0, 0)), 0.0;
  CHECK(max_abs(maurer_cartan_right(g, x) - expected) < 1e-14);
  CHECK(max_abs(expected + x) < 1e-14);
}

TEST_CASE("property: ad-invariance, Ad-invariance, inverse exponential, Jacobi") {
  Rng rng(2024);
  for (const GroupSpec& g : groups()) {
    CAPTURE(g.name());
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix x = random_algebra(g, rng);
      const Matrix y = random_algebra(g, rng);
      const Matrix z = random_algebra(g, rng);
      const Matrix h = random_group(g, rng);
      CHECK(std::abs(killing_form(bracket(x, y), z, g) + killing_form(y, bracket(x, z), g)) <= 1e-12);
      const double xy = killing_form(x, y, g);
      const double adj = killing_form(adjoint_action(h, x), adjoint_action(h, y), g);
      CHECK(std::abs(adj - xy) <= 1e-10 * std::max(1.0, std::abs(xy)));
      CHECK(std::abs(xy - killing_form(y, x, g)) <= 1e-14);
      CHECK(max_abs(exp_algebra(x, g) * exp_algebra(-x, g) - g.identity()) <= 1e-10);
      const Matrix jacobi = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      CHECK(max_abs(jacobi) <= 1e-12);
      CHECK(g.in_algebra(bracket(x, y), 1e-12));
      CHECK(max_abs(adjoint_action_inverse(h, adjoint_action(h, x)) - x) <= 1e-12);
    }
  }
}

TEST_CASE("projections land on the algebra and the group") {
  Rng rng(5);
  std::normal_distribution<double> gauss;
  for (const GroupSpec& g : groups()) {
    const int n = g.matrix_size();
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = {gauss(rng), g.family() == Family::SO ? 0.0 : gauss(rng)};
    CHECK(g.in_algebra(g.project_algebra(m)));
    const Matrix drifted = random_group(g, rng) + 1e-6 * m;
    CHECK_FALSE(g.in_group(drifted));
    CHECK(g.in_group(g.project_group(drifted)));
    CHECK(g.group_drift(g.project_group(drifted)) <= 1e-12);
  }
}

TEST_CASE("exp_jet derivative matches a central difference") {
  Rng rng(9);
  const GroupSpec g = GroupSpec::su(3);
  const Matrix x = random_algebra(g, rng);
  const Matrix dx = random_algebra(g, rng);
  const ExpJet jet = exp_jet(x, dx);
  const double s = 1e-5;
  const Matrix fd = (exp_algebra(x + s * dx, g) - exp_algebra(x - s * dx, g)) / (2 * s);
  CHECK(max_abs(jet.value - exp_algebra(x, g)) <= 1e-12);
  CHECK(max_abs(jet.derivative - fd) <= 1e-8);
}
