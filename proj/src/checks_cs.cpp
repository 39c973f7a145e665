#include <algorithm>
#include <cmath>

#include "check_support.hpp"

namespace cs2g {

namespace detail {

namespace {

SmoothMap q_to_chart(int m) { return projection(spaces::Q(m), spaces::chart(m), {0}, "pr.X"); }

CheckReport flat_case(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "flat_case", 1e-10);
  const int m = ctx.m();
  const BundleModel bundle = BundleModel::flat(ctx.spec, m);
  const FormEvaluator cs = form_cs(bundle);
  const FormEvaluator omega = form_omega(ctx.spec);
  const FormEvaluator four = four_curvature(bundle);
  Accumulator vertical("-CS(A) = omega on vertical tangents", ctx.tol(1e-10));
  Accumulator curvature("4-curvature vanishes", ctx.tol(1e-12));
  for (int i = 0; i < params.points; ++i) {
    const Point q = ctx.point(spaces::Q(m));
    const Point g{std::get<Matrix>(q[1])};
    for (int j = 0; j < params.tangent_sets; ++j) {
      std::vector<Tangent> on_q, on_g;
      for (int k = 0; k < 3; ++k) {
        const Matrix x = random_algebra(ctx.spec, rng);
        on_q.push_back(Tangent{Vector(Vector::Zero(m)), x});
        on_g.push_back(Tangent{x});
      }
      vertical.add(cs(q, on_q), omega(g, on_g));
      const Point x{std::get<Vector>(q[0])};
      curvature.add(four(x, ctx.tangents(spaces::chart(m), x, 4)), 0.0);
    }
  }
  return ctx.report({vertical.result(), curvature.result()});
}

CheckReport four_curvature_check(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "four_curvature", 1e-4);
  const int m = std::max(4, ctx.m());
  const BundleModel bundle = ctx.bundle(m);
  const FdForm d_cs(form_cs(bundle), params.h);
  const FormEvaluator rhs = pullback(four_curvature(bundle), q_to_chart(m));
  Accumulator closed("d(-CS(A)) + <F_A, F_A> = 0", ctx.tol(1e-4));
  Accumulator fiber("d(-CS(A)) on horizontal lifts is independent of g", ctx.tol(1e-6));
  Accumulator pontryagin("so(5): -<F,F>/2pi = tr(F^2)/16pi^2", ctx.tol(1e-12));
  OrderTracker order;
  const int points = std::min(params.points, 4);
  sample(
      ctx, spaces::Q(m), 4,
      [&](const Point& p, const std::vector<Tangent>& v, bool first) {
        closed.add(d_cs(p, v, first ? &order : nullptr), rhs(p, v));
      },
      points, 2);
  for (int i = 0; i < points; ++i) {
    const Point a = ctx.point(spaces::Q(m));
    const Point b{a[0], random_group(ctx.spec, rng)};
    std::vector<Tangent> lift_a, lift_b;
    for (int k = 0; k < 4; ++k) {
      const Vector v = std::get<Vector>(random_tangent(spaces::chart(m), {a[0]}, ctx.spec, rng)[0]);
      lift_a.push_back(horizontal_lift(bundle, a, v));
      lift_b.push_back(horizontal_lift(bundle, b, v));
    }
    fiber.add(d_cs(a, lift_a), d_cs(b, lift_b));
  }
  const GroupSpec so5 = GroupSpec::so(5);
  const BundleModel b5 = BundleModel::random(so5, m, rng);
  for (int i = 0; i < params.points; ++i) {
    const Point x = random_point(spaces::chart(m), so5, params.N, rng);
    std::vector<Vector> v;
    for (int k = 0; k < 4; ++k) v.push_back(std::get<Vector>(random_tangent(spaces::chart(m), x, so5, rng)[0]));
    const Vector& xv = std::get<Vector>(x[0]);
    pontryagin.add(pontryagin_lhs(b5, xv, v), pontryagin_rhs(b5, xv, v));
  }
  return ctx.report({closed.result(), fiber.result(), pontryagin.result()}, &order,
                    "chart dimension " + std::to_string(m));
}

CheckReport bianchi(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "bianchi", 1e-3);
  const int m = ctx.m();
  const BundleModel bundle = ctx.bundle(m);
  const FdForm d_f(form_base_curvature(bundle), params.h);
  Accumulator acc("dF + [a ^ F] = 0", ctx.tol(1e-3));
  OrderTracker order;
  sample(ctx, spaces::chart(m), 3, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    const Vector& x = std::get<Vector>(p[0]);
    auto a = [&](int i) { return bundle.base_connection(x, std::get<Vector>(v[i][0])); };
    auto f = [&](int i, int j) { return bundle.base_curvature(x, std::get<Vector>(v[i][0]), std::get<Vector>(v[j][0])); };
    const Matrix wedge = (bracket(a(0), f(1, 2)) - bracket(a(1), f(0, 2)) + bracket(a(2), f(0, 1))) / 3.0;
    acc.add(d_f(p, v, first ? &order : nullptr), FormValue(Matrix(-wedge)));
  });
  return ctx.report({acc.result()}, &order);
}

CheckReport delta_h_cs(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "delta_h_cs", 1e-4);
  const int m = ctx.m();
  const BundleModel bundle = ctx.bundle(m);
  const auto lhs = coboundary_terms(form_cs(bundle), face_table("QG.1"));
  const FormEvaluator omega = pullback(form_omega(ctx.spec), pr_last_group(m));
  const FdForm d_pair(form_A_theta_hat(bundle), params.h);
  Accumulator acc("delta_h(-CS(A)) = omega - d<A, Theta_hat>", ctx.tol(1e-4));
  OrderTracker order;
  sample(ctx, spaces::QxG(m), 3, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    const Expanded e = evaluate_terms(lhs, p, v);
    const FormValue w = omega(p, v);
    const FormValue d = d_pair(p, v, first ? &order : nullptr);
    acc.add(e.value, w - d, std::max({e.scale, w.magnitude(), d.magnitude()}));
  });
  return ctx.report({acc.result()}, &order);
}

CheckReport delta_A_theta_hat_eq_kappa(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "delta_A_theta_hat_eq_kappa", 1e-10);
  const int m = ctx.m();
  const BundleModel bundle = ctx.bundle(m);
  const auto lhs = coboundary_terms(form_A_theta_hat(bundle), face_table("QG.2"));
  const FormEvaluator kappa = pullback(form_kappa(ctx.spec), pr_group_pair(m));
  Accumulator acc("delta_h <A, Theta_hat> = kappa", ctx.tol(1e-10));
  sample(ctx, spaces::QxG2(m), 2, [&](const Point& p, const std::vector<Tangent>& v, bool) {
    const Expanded e = evaluate_terms(lhs, p, v);
    acc.add(e.value, kappa(p, v), e.scale);
  });
  return ctx.report({acc.result()});
}

CheckReport two_curving(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "two_curving", 1e-4);
  const int m = ctx.m();
  const BundleModel bundle = ctx.bundle(m);
  const SmoothMap pi = endpoint_map(1, m);
  std::vector<FormEvaluator> lhs;
  for (const FormEvaluator& t : coboundary_terms(form_cs(bundle), face_table("QG.1"))) lhs.push_back(pullback(t, pi));
  const FdForm d_beta(form_beta_A(bundle), params.h);
  Accumulator acc("pi* delta_h(-CS(A)) = d beta_A", ctx.tol(1e-4));
  OrderTracker order;
  sample(ctx, spaces::QxPG(m), 3, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    const Expanded e = evaluate_terms(lhs, p, v);
    acc.add(e.value, d_beta(p, v, first ? &order : nullptr), e.scale);
  });
  return ctx.report({acc.result()}, &order);
}

CheckReport delta_h_beta_eq_d_alpha(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "delta_h_beta_eq_d_alpha", 1e-4);
  const int m = ctx.m();
  const BundleModel bundle = ctx.bundle(m);
  const FaceMapTable& faces = face_table("QPG.2");
  const auto delta_b = coboundary_terms(pullback(form_B(ctx.spec), pr_path(m)), faces);
  const auto delta_beta = coboundary_terms(form_beta_A(bundle), faces);
  const FdForm d_alpha(form_alpha(ctx.spec, m), params.h);
  const FormEvaluator kappa = pullback(form_kappa(ctx.spec), pr_endpoint_pair(m));
  Accumulator with_b("delta_h B = d alpha + pi* kappa", ctx.tol(1e-4));
  Accumulator with_beta("delta_h beta_A = d alpha", ctx.tol(1e-4));
  OrderTracker order;
  sample(ctx, spaces::QxPG2(m), 2, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    const FormValue da = d_alpha(p, v, first ? &order : nullptr);
    const FormValue k = kappa(p, v);
    const Expanded b = evaluate_terms(delta_b, p, v);
    with_b.add(b.value, da + k, std::max({b.scale, da.magnitude(), k.magnitude()}));
    const Expanded beta = evaluate_terms(delta_beta, p, v);
    with_beta.add(beta.value, da, beta.scale);
  });
  return ctx.report({with_b.result(), with_beta.result()}, &order);
}

CheckReport delta_h_alpha_zero(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "delta_h_alpha_zero", 1e-10);
  const int m = ctx.m();
  const auto terms = coboundary_terms(form_alpha(ctx.spec, m), face_table("QPG.3"));
  Accumulator acc("delta_h alpha = 0", ctx.tol(1e-10));
  sample(ctx, spaces::QxPG3(m), 1, [&](const Point& p, const std::vector<Tangent>& v, bool) {
    const Expanded e = evaluate_terms(terms, p, v);
    acc.add(e.value, 0.0, e.scale);
  });
  return ctx.report({acc.result()});
}

CheckReport delta_v_beta(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "delta_v_beta", 1e-10);
  const int m = ctx.m();
  const BundleModel bundle = ctx.bundle(m);
  const FaceMapTable& faces = face_table("QPG_v.1");
  const auto lhs = coboundary_terms(form_beta_A(bundle), faces);
  const auto rhs = coboundary_terms(pullback(form_B(ctx.spec), pr_path(m)), faces);
  Accumulator acc("delta_v beta_A = delta_v B", ctx.tol(1e-10));
  sample(ctx, spaces::QxPGxOG(m), 2, [&](const Point& p, const std::vector<Tangent>& v, bool) {
    const Expanded a = evaluate_terms(lhs, p, v);
    const Expanded b = evaluate_terms(rhs, p, v);
    acc.add(a.value, b.value, std::max(a.scale, b.scale));
  });
  return ctx.report({acc.result()});
}

}  // namespace

std::vector<CheckInfo> cs_checks() {
  return {
      {"bianchi", "chern-simons", 1e-3, bianchi},
      {"delta_A_theta_hat_eq_kappa", "chern-simons", 1e-10, delta_A_theta_hat_eq_kappa},
      {"delta_h_alpha_zero", "chern-simons", 1e-10, delta_h_alpha_zero},
      {"delta_h_beta_eq_d_alpha", "chern-simons", 1e-4, delta_h_beta_eq_d_alpha},
      {"delta_h_cs", "chern-simons", 1e-4, delta_h_cs},
      {"delta_v_beta", "chern-simons", 1e-10, delta_v_beta},
      {"flat_case", "chern-simons", 1e-10, flat_case},
      {"four_curvature", "chern-simons", 1e-4, four_curvature_check},
      {"two_curving", "chern-simons", 1e-4, two_curving},
  };
}

}  // namespace detail

}  // namespace cs2g
