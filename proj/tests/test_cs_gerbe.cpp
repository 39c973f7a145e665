#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cs2g/catalog.hpp"
#include "cs2g/cs_gerbe.hpp"
#include "cs2g/faces.hpp"

using namespace cs2g;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kN = 32;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

// F_x(v, w) from central differences of a in x, independent of the coefficient partials.
Matrix fd_curvature(const BundleModel& b, const Vector& x, const Vector& v, const Vector& w) {
  const double h = 1e-5;
  auto dir = [&](const Vector& along, const Vector& arg) {
    return Matrix((b.base_connection(x + h * along, arg) - b.base_connection(x - h * along, arg)) / (2 * h));
  };
  return 0.5 * (dir(v, w) - dir(w, v) + bracket(b.base_connection(x, v), b.base_connection(x, w)));
}

Vector chart_vector(const Tangent& t) { return std::get<Vector>(t[0]); }

struct Fixture {
  GroupSpec g = GroupSpec::su(2);
  int m = 3;
  Rng rng{29};
  BundleModel bundle = BundleModel::random(g, m, rng);
  Point point(const Space& s) { return random_point(s, g, kN, rng); }
  Tangent tangent(const Space& s, const Point& p) { return random_tangent(s, p, g, rng); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "connection on Q: vertical values, equivariance, horizontal lifts") {
  const FormEvaluator a = form_connection(bundle);
  const Point q = point(spaces::Q(m));
  const Matrix gq = std::get<Matrix>(q[1]);
  const Matrix x = random_algebra(g, rng);
  const Vector zero = Vector::Zero(m);
  CHECK(max_abs(a(q, {{zero, x}}).algebra() - x) == 0.0);

  const Tangent t = tangent(spaces::Q(m), q);
  const Matrix h = random_group(g, rng);
  const Point qh{q[0], Matrix(gq * h)};
  const Tangent pushed{t[0], adjoint_action_inverse(h, std::get<Matrix>(t[1]))};
  CHECK(max_abs(a(qh, {pushed}).algebra() - adjoint_action_inverse(h, a(q, {t}).algebra())) <= 1e-10);

  const Vector v = chart_vector(t);
  CHECK(max_abs(a(q, {horizontal_lift(bundle, q, v)}).algebra()) <= 1e-14);
  const FormEvaluator f = form_curvature(bundle);
  const Matrix y = random_algebra(g, rng);
  CHECK(max_abs(f(q, {{zero, x}, {zero, y}}).algebra()) <= 1e-10);
}

TEST_CASE_FIXTURE(Fixture, "base curvature matches finite differences of a") {
  const Point p = point(spaces::chart(m));
  const Vector& x = std::get<Vector>(p[0]);
  for (int i = 0; i < 3; ++i) {
    const Vector v = chart_vector(tangent(spaces::chart(m), p));
    const Vector w = chart_vector(tangent(spaces::chart(m), p));
    const Matrix expected = fd_curvature(bundle, x, v, w);
    CHECK(max_abs(bundle.base_curvature(x, v, w) - expected) <= 1e-8 * std::max(1.0, max_abs(expected)));
    CHECK(max_abs(bundle.base_curvature(x, v, v)) <= 1e-14);
  }
}

TEST_CASE_FIXTURE(Fixture, "minus CS against a term-by-term oracle") {
  const FormEvaluator cs = form_cs(bundle);
  const FormEvaluator a = form_connection(bundle);
  const FormEvaluator f = form_curvature(bundle);
  const Point q = point(spaces::Q(m));
  std::vector<Tangent> v;
  for (int i = 0; i < 3; ++i) v.push_back(tangent(spaces::Q(m), q));
  std::vector<Matrix> ai;
  for (const Tangent& t : v) ai.push_back(a(q, {t}).algebra());
  auto fij = [&](int i, int j) { return f(q, {v[i], v[j]}).algebra(); };
  const double af = (killing_form(ai[0], fij(1, 2), g) - killing_form(ai[1], fij(0, 2), g) +
                     killing_form(ai[2], fij(0, 1), g)) / 3.0;
  const double aaa = killing_form(ai[0], bracket(ai[1], ai[2]), g);
  const double expected = -af + aaa / 6.0;
  CHECK(std::abs(cs(q, v).scalar() - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
  CHECK(std::abs(cs(q, {v[0], v[0], v[1]}).scalar()) <= 1e-14);
  CHECK(std::abs(cs(q, {v[1], v[0], v[2]}).scalar() + cs(q, v).scalar()) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "flat connection: minus CS is omega on vertical tangents") {
  const BundleModel flat = BundleModel::flat(g, m);
  const FormEvaluator cs = form_cs(flat);
  const FormEvaluator omega = form_omega(g);
  const Point q = point(spaces::Q(m));
  std::vector<Tangent> on_q, on_g;
  for (int i = 0; i < 3; ++i) {
    const Matrix x = random_algebra(g, rng);
    on_q.push_back({Vector(Vector::Zero(m)), x});
    on_g.push_back({x});
  }
  CHECK(std::abs(cs(q, on_q).scalar() - omega({q[1]}, on_g).scalar()) <= 1e-10);
  const BundleModel flat4 = BundleModel::flat(GroupSpec::so(5), 4);
  const Point x{Vector(Vector::Random(4))};
  std::vector<Tangent> v;
  for (int i = 0; i < 4; ++i) v.push_back({Vector(Vector::Random(4))});
  CHECK(four_curvature(flat4)(x, v).scalar() == 0.0);
}

TEST_CASE("four curvature: K&N wedge, degenerate chart, Pontryagin normalization") {
  Rng rng(31);
  const GroupSpec so5 = GroupSpec::so(5);
  const BundleModel b = BundleModel::random(so5, 4, rng);
  const FormEvaluator four = four_curvature(b);
  const Point p = random_point(spaces::chart(4), so5, kN, rng);
  const Vector& x = std::get<Vector>(p[0]);
  std::vector<Vector> v;
  std::vector<Tangent> t;
  for (int i = 0; i < 4; ++i) {
    t.push_back(random_tangent(spaces::chart(4), p, so5, rng));
    v.push_back(std::get<Vector>(t.back()[0]));
  }
  auto f = [&](int i, int j) { return b.base_curvature(x, v[i], v[j]); };
  const double expected = -(killing_form(f(0, 1), f(2, 3), so5) - killing_form(f(0, 2), f(1, 3), so5) +
                            killing_form(f(0, 3), f(1, 2), so5)) / 3.0;
  CHECK(std::abs(four(p, t).scalar() - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));

  const double lhs = pontryagin_lhs(b, x, v);
  const double rhs = pontryagin_rhs(b, x, v);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  const double trace = (f(0, 1) * f(2, 3)).trace().real();
  CHECK(std::abs(rhs - trace / (16 * kPi * kPi)) <= 1e-14);

  const BundleModel b3 = BundleModel::random(GroupSpec::su(2), 3, rng);
  const Point p3 = random_point(spaces::chart(3), GroupSpec::su(2), kN, rng);
  std::vector<Tangent> t3;
  for (int i = 0; i < 4; ++i) t3.push_back(random_tangent(spaces::chart(3), p3, GroupSpec::su(2), rng));
  CHECK(std::abs(four_curvature(b3)(p3, t3).scalar()) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "beta_A against B and the endpoint pairing") {
  const FormEvaluator beta = form_beta_A(bundle);
  const FormEvaluator b = form_B(g);
  const FormEvaluator a = form_connection(bundle);
  const Point pt = point(spaces::QxPG(m));
  const Tangent u = tangent(spaces::QxPG(m), pt);
  const Tangent w = tangent(spaces::QxPG(m), pt);
  const SampledPath& p = std::get<SampledPath>(pt[2]);
  const Point q{pt[0], pt[1]};
  auto theta_hat_end = [&](const Tangent& t) {
    return adjoint_action(ev_2pi(p), std::get<PathTangent>(t[2]).values.back());
  };
  const Matrix au = a(q, {{u[0], u[1]}}).algebra();
  const Matrix aw = a(q, {{w[0], w[1]}}).algebra();
  const double pairing = 0.5 * (killing_form(au, theta_hat_end(w), g) - killing_form(aw, theta_hat_end(u), g));
  const double expected = b({p}, {{u[2]}, {w[2]}}).scalar() - pairing;
  CHECK(std::abs(beta(pt, {u, w}).scalar() - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
  CHECK(beta(pt, {u, u}).scalar() == 0.0);

  const BundleModel flat = BundleModel::flat(g, m);
  const Point at_one{pt[0], g.identity(), pt[2]};
  const PathTangent zero = PathTangent::zero(g, kN, PathKind::Path);
  const Tangent v1{u[0], random_algebra(g, rng), zero};
  const Tangent v2{w[0], random_algebra(g, rng), zero};
  CHECK(form_beta_A(flat)(at_one, {v1, v2}).scalar() == 0.0);
}

TEST_CASE_FIXTURE(Fixture, "alpha") {
  const FormEvaluator alpha = form_alpha(g, m);
  const Point pt = point(spaces::QxPG2(m));
  const Tangent t = tangent(spaces::QxPG2(m), pt);
  const SampledPath& q = std::get<SampledPath>(pt[3]);
  const SampledPath one = SampledPath::identity(g, kN, PathKind::Path);
  CHECK(alpha({pt[0], pt[1], pt[2], one}, {t}).scalar() == 0.0);
  const PathTangent zero = PathTangent::zero(g, kN, PathKind::Path);
  CHECK(alpha(pt, {{t[0], t[1], zero, zero}}).scalar() == 0.0);
  const std::vector<double> w = quadrature_weights(kN, PathKind::Path);
  const PathTangent& x = std::get<PathTangent>(t[2]);
  double expected = 0.0;
  for (int k = 0; k <= kN; ++k) expected += w[k] * killing_form(x.values[k], q.derivs[k] * q.values[k].adjoint(), g);
  expected *= 2.0;
  CHECK(std::abs(alpha(pt, {t}).scalar() - expected) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "face maps of Q x PG^2") {
  const FaceMapTable& faces = face_table("QPG.2");
  REQUIRE(faces.faces.size() == 3u);
  const Point pt = point(spaces::QxPG2(m));
  const SampledPath& p = std::get<SampledPath>(pt[2]);
  const SampledPath one = SampledPath::identity(g, kN, PathKind::Path);
  const Point d1 = faces.faces[1]({pt[0], pt[1], p, one});
  const SampledPath& image = std::get<SampledPath>(d1[2]);
  for (int k = 0; k <= kN; ++k) CHECK(max_abs(image.values[k] - p.values[k]) <= 1e-14);
  const Point d0 = faces.faces[0](pt);
  CHECK(max_abs(std::get<Matrix>(d0[1]) - std::get<Matrix>(pt[1]) * ev_2pi(p)) <= 1e-14);
  const FaceMapTable& lower = face_table("QPG.1");
  const Point a = lower.faces[0](faces.faces[2](pt));
  const Point b = lower.faces[1](faces.faces[0](pt));
  CHECK(max_abs(std::get<Matrix>(a[1]) - std::get<Matrix>(b[1])) <= 1e-14);
}

TEST_CASE_FIXTURE(Fixture, "starred face against pointwise matrix products") {
  const FaceMapTable& faces = face_table("semi2_h.2");
  const Point pt = point(spaces::QxSemi2x2(m));
  const Point out = faces.faces[1](pt);
  auto s = [&](int i, int k) { return std::get<SampledPath>(pt[i]).values[k]; };
  auto o = [&](int i, int k) { return std::get<SampledPath>(out[i]).values[k]; };
  for (int k = 0; k <= kN; ++k) {
    const Matrix qk = s(5, k), qi = qk.adjoint();
    const Matrix eta1 = s(6, k), eta2 = s(7, k);
    CHECK(max_abs(o(2, k) - s(2, k) * qk) <= 1e-12);
    CHECK(max_abs(o(3, k) - qi * s(3, k) * qk * eta1) <= 1e-12);
    CHECK(max_abs(o(4, k) - eta1.adjoint() * qi * s(4, k) * qk * eta1 * eta2) <= 1e-12);
  }
}

TEST_CASE_FIXTURE(Fixture, "bundle JSON round trip and validation") {
  bundle.set_seed(99);
  const BundleModel back = BundleModel::from_json(bundle.to_json());
  CHECK(back.spec() == bundle.spec());
  CHECK(back.chart_dimension() == m);
  CHECK(back.seed() == 99u);
  const Vector x = Vector::Random(m);
  const Vector v = Vector::Random(m);
  CHECK(max_abs(back.base_connection(x, v) - bundle.base_connection(x, v)) == 0.0);
  CHECK(code_of([] { BundleModel::from_json("{\"family\": \"su\"}"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { BundleModel::from_json("not json"); }) == ErrorCode::InvalidInput);
}
