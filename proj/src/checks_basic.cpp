#include <cmath>
#include <numbers>

#include "check_support.hpp"

namespace cs2g {

namespace detail {

namespace {

constexpr double kPi = std::numbers::pi;

SmoothMap carried_map(std::string name, Space domain, Space codomain, std::function<CPoint(const CPoint&)> apply) {
  return SmoothMap{std::move(name), std::move(domain), std::move(codomain), std::move(apply)};
}

CheckReport delta_epsilon_eq_nu(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "delta_epsilon_eq_nu", 1e-10);
  const auto lhs = coboundary_terms(form_epsilon(ctx.spec), face_table("gerbe.2"));
  const FormEvaluator rhs = pullback(form_nu(ctx.spec), projection(spaces::PGxOG2(), spaces::OG2(), {1, 2}, "pr.OG2"));
  Accumulator acc("delta epsilon = nu", ctx.tol(1e-10));
  sample(ctx, spaces::PGxOG2(), 1, [&](const Point& p, const std::vector<Tangent>& v, bool) {
    const Expanded e = evaluate_terms(lhs, p, v);
    acc.add(e.value, rhs(p, v), e.scale);
  });
  return ctx.report({acc.result()});
}

CheckReport delta_B(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "delta_B", 1e-4);
  const auto lhs = coboundary_terms(form_B(ctx.spec), face_table("gerbe.1"));
  const FormEvaluator r = pullback(form_R(ctx.spec), projection(spaces::PGxOG(), spaces::OG(), {1}, "pr.OG"));
  const FdForm d_eps(form_epsilon(ctx.spec), params.h);
  Accumulator acc("delta B = R - d epsilon", ctx.tol(1e-4));
  OrderTracker order;
  sample(ctx, spaces::PGxOG(), 2, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    const Expanded e = evaluate_terms(lhs, p, v);
    const FormValue rv = r(p, v);
    const FormValue de = d_eps(p, v, first ? &order : nullptr);
    acc.add(e.value, rv - de, std::max({e.scale, rv.magnitude(), de.magnitude()}));
  });
  return ctx.report({acc.result()}, &order);
}

CheckReport dB_eq_omega(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "dB_eq_omega", 1e-4);
  const FdForm d_b(form_B(ctx.spec), params.h);
  const FormEvaluator rhs = pullback(form_omega(ctx.spec), lookup_map("ev2pi"));
  Accumulator acc("dB = ev* omega", ctx.tol(1e-4));
  OrderTracker order;
  sample(ctx, spaces::PG(), 3, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    acc.add(d_b(p, v, first ? &order : nullptr), rhs(p, v));
  });
  return ctx.report({acc.result()}, &order);
}

CheckReport AdR_minus_R_eq_drho(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "AdR_minus_R_eq_drho", 1e-4);
  const FormEvaluator ad_r = pullback(form_R(ctx.spec), lookup_map("Ad"));
  const FormEvaluator pr_r = pullback(form_R(ctx.spec), projection(spaces::PGxOG(), spaces::OG(), {1}, "pr.OG"));
  const FdForm d_rho(form_rho(ctx.spec), params.h);
  Accumulator acc("Ad*R - R = d rho", ctx.tol(1e-4));
  OrderTracker order;
  sample(ctx, spaces::PGxOG(), 2, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    const FormValue a = ad_r(p, v);
    const FormValue b = pr_r(p, v);
    acc.add(a - b, d_rho(p, v, first ? &order : nullptr), std::max(a.magnitude(), b.magnitude()));
  });
  return ctx.report({acc.result()}, &order);
}

CheckReport crossed_module_surrogate(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "crossed_module_surrogate", 1e-8);
  const Space s{"(PGxOG)^2", {{FactorKind::Path, 0}, {FactorKind::Loop, 0}, {FactorKind::Path, 0}, {FactorKind::Loop, 0}}};
  const GroupSpec& spec = ctx.spec;
  // (p, gamma, q, eta)
  const SmoothMap to_rho = carried_map("(q^-1,gamma)", s, spaces::PGxOG(),
                                       [](const CPoint& c) { return CPoint{prim::inverse(c[2]), c[1]}; });
  const SmoothMap to_nu = carried_map("(Ad_q^-1 gamma,eta)", s, spaces::OG2(),
                                      [](const CPoint& c) { return CPoint{prim::conj_inverse(c[2], c[1]), c[3]}; });
  const SmoothMap to_alpha = carried_map("(p gamma,q eta)", s, spaces::PG2(), [](const CPoint& c) {
    return CPoint{prim::mult(c[0], c[1]), prim::mult(c[2], c[3])};
  });
  const std::vector<FormEvaluator> lhs{
      -1.0 * pullback(form_rho(spec), to_rho),
      pullback(form_nu(spec), to_nu),
      pullback(form_epsilon(spec), lookup_map("semidirect.mult")),
      -1.0 * pullback(form_epsilon(spec), projection(s, spaces::PGxOG(), {2, 3}, "(q,eta)")),
      -1.0 * pullback(form_epsilon(spec), projection(s, spaces::PGxOG(), {0, 1}, "(p,gamma)")),
  };
  const std::vector<FormEvaluator> rhs{
      pullback(form_alpha_paths(spec), to_alpha),
      -1.0 * pullback(form_alpha_paths(spec), projection(s, spaces::PG2(), {0, 2}, "(p,q)")),
  };
  Accumulator acc("descended crossed-module identity", ctx.tol(1e-8));
  sample(ctx, s, 1, [&](const Point& p, const std::vector<Tangent>& v, bool) {
    const Expanded l = evaluate_terms(lhs, p, v);
    const Expanded r = evaluate_terms(rhs, p, v);
    acc.add(l.value, r.value, std::max(l.scale, r.scale));
  });
  return ctx.report({acc.result()});
}

CheckReport d_kappa(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "d_kappa", 1e-4);
  const FdForm dk(form_kappa(ctx.spec), params.h);
  const auto rhs = coboundary_terms(form_omega(ctx.spec), face_table("nerve_G.2"));
  Accumulator acc("d kappa = delta omega", ctx.tol(1e-4));
  OrderTracker order;
  sample(ctx, spaces::G2(), 3, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    const Expanded e = evaluate_terms(rhs, p, v);
    acc.add(dk(p, v, first ? &order : nullptr), e.value, e.scale);
  });
  return ctx.report({acc.result()}, &order);
}

CheckReport epsilon_MS_variant(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "epsilon_MS_variant", 1e-10);
  const FormEvaluator ems = form_epsilon_MS(ctx.spec);
  const FaceMapTable& g1 = face_table("gerbe.1");
  const FaceMapTable& g2 = face_table("gerbe.2");
  const auto twice = expand_twice(ems, g1, g2);
  const FormEvaluator corrected = form_epsilon(ctx.spec) + coboundary(ems, g1);
  const auto lhs = coboundary_terms(corrected, g2);
  const FormEvaluator nu = pullback(form_nu(ctx.spec), projection(spaces::PGxOG2(), spaces::OG2(), {1, 2}, "pr.OG2"));
  Accumulator squared("delta delta epsilon_MS = 0", ctx.tol(1e-10));
  Accumulator shifted("delta (epsilon + delta epsilon_MS) = nu", ctx.tol(1e-10));
  sample(ctx, spaces::PGxOG2(), 1, [&](const Point& p, const std::vector<Tangent>& v, bool) {
    const Expanded e = evaluate_terms(twice, p, v);
    squared.add(e.value, 0.0, e.scale);
    const Expanded l = evaluate_terms(lhs, p, v);
    shifted.add(l.value, nu(p, v), l.scale);
  });
  return ctx.report({squared.result(), shifted.result()});
}

CheckReport adjoint_phase_check(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "adjoint_phase", 1e-6);
  constexpr int kTimeNodes = 64;
  Accumulator acc("grid double integral = fiber integral of (id x ev)* rho", ctx.tol(1e-6));
  for (int i = 0; i < params.points; ++i) {
    const SampledPath p = random_path(ctx.spec, params.N, PathKind::Path, rng);
    const LoopFamily f = random_family(ctx.spec, params.N, rng);
    const AdjointPhase phase = adjoint_phase(p, f, kTimeNodes);
    acc.add(phase.double_integral, phase.fiber_integral);
  }
  return ctx.report({acc.result()}, nullptr, "t-grid of 64 intervals");
}

CheckReport fiber_stokes(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "fiber_stokes", 1e-4);
  constexpr int kTimeNodes = 64;
  const int points = std::min(params.points, 2);
  const int sets = std::min(params.tangent_sets, 2);
  const SmoothMap ev = family_evaluation();
  std::vector<SubResult> subs;
  OrderTracker order;
  for (const FormEvaluator& base : {form_rho(ctx.spec), form_epsilon(ctx.spec)}) {
    const FormEvaluator xi = pullback(base, ev);
    const FdForm d_int(fiber_integrate(xi, kTimeNodes), params.h);
    const FormEvaluator int_d = fiber_integrate(exterior_derivative(xi, params.h), kTimeNodes);
    const FormEvaluator top = fiber_slice(xi, 2.0 * kPi);
    const FormEvaluator bottom = fiber_slice(xi, 0.0);
    Accumulator acc("Stokes for (id x ev)* " + base.name, ctx.tol(1e-4));
    sample(
        ctx, spaces::PGxPOG(), 1,
        [&](const Point& p, const std::vector<Tangent>& v, bool first) {
          const FormValue a = d_int(p, v, first ? &order : nullptr);
          const FormValue b = int_d(p, v);
          const FormValue t = top(p, v);
          const FormValue s = bottom(p, v);
          acc.add(a + b, t - s, std::max({a.magnitude(), b.magnitude(), t.magnitude(), s.magnitude()}));
        },
        points, sets, std::min(params.N, 64));
    subs.push_back(acc.result());
  }
  return ctx.report(std::move(subs), &order, "64 x 64 grids; at most 2 points x 2 tangent sets");
}

CheckReport R_identities(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "R_identities", 1e-5);
  const FormEvaluator r = form_R(ctx.spec);
  const FdForm dr(r, params.h);
  const auto delta_r = coboundary_terms(r, face_table("nerve_OG.2"));
  const FdForm d_nu(form_nu(ctx.spec), params.h);
  const auto delta_nu = coboundary_terms(form_nu(ctx.spec), face_table("nerve_OG.3"));
  Accumulator closed("dR = 0", ctx.tol(1e-3));
  Accumulator first("delta R = d nu", ctx.tol(1e-5));
  Accumulator second("delta nu = 0", ctx.tol(1e-5));
  OrderTracker order;
  sample(ctx, spaces::OG(), 3, [&](const Point& p, const std::vector<Tangent>& v, bool) {
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        scale = std::max(scale, std::abs(r(p, {bracket(v[i], v[j]), v[3 - i - j]}).scalar()));
    closed.add(dr(p, v), 0.0, scale);
  });
  sample(ctx, spaces::OG2(), 2, [&](const Point& p, const std::vector<Tangent>& v, bool is_first) {
    const Expanded e = evaluate_terms(delta_r, p, v);
    first.add(e.value, d_nu(p, v, is_first ? &order : nullptr), e.scale);
  });
  sample(ctx, spaces::OG3(), 1, [&](const Point& p, const std::vector<Tangent>& v, bool) {
    const Expanded e = evaluate_terms(delta_nu, p, v);
    second.add(e.value, 0.0, e.scale);
  });
  return ctx.report({closed.result(), first.result(), second.result()}, &order);
}

CheckReport maurer_cartan(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "maurer_cartan", 1e-6);
  const FdForm d_theta(form_theta(ctx.spec), params.h);
  const FdForm d_theta_hat(form_theta_hat(ctx.spec), params.h);
  Accumulator left("d Theta + 1/2 [Theta, Theta] = 0", ctx.tol(1e-6));
  Accumulator right("d Theta_hat - 1/2 [Theta_hat, Theta_hat] = 0", ctx.tol(1e-6));
  OrderTracker order;
  sample(ctx, spaces::G(), 2, [&](const Point& p, const std::vector<Tangent>& v, bool first) {
    const Matrix& g = std::get<Matrix>(p[0]);
    const Matrix& x = std::get<Matrix>(v[0][0]);
    const Matrix& y = std::get<Matrix>(v[1][0]);
    left.add(d_theta(p, v), FormValue(Matrix(-0.5 * bracket(x, y))));
    right.add(d_theta_hat(p, v, first ? &order : nullptr),
              FormValue(Matrix(0.5 * bracket(adjoint_action(g, x), adjoint_action(g, y)))));
  });
  return ctx.report({left.result(), right.result()}, &order);
}

CheckReport simplicial_identities(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "simplicial_identities", 1e-12);
  Accumulator acc("face-map identities on points and tangents", ctx.tol(1e-12));
  const int m = ctx.m();
  auto with_chart = [m](Space s) {
    for (FactorSpec& f : s.factors)
      if (f.kind == FactorKind::Chart && f.dim == 0) f.dim = m;
    return s;
  };
  const int points = std::min(params.points, 2);
  for (const SimplicialPair& pair : simplicial_pairs()) {
    const FaceMapTable& upper = face_table(pair.upper);
    const FaceMapTable& lower = face_table(pair.lower);
    const Space domain = with_chart(upper.domain);
    for (int s = 0; s < points; ++s) {
      const Point p = ctx.point(domain, 16);
      const CPoint c = carry(p, ctx.tangents(domain, p, 2));
      auto compare = [&](const CPoint& a, const CPoint& b) {
        const auto [pa, va] = uncarry(a);
        const auto [pb, vb] = uncarry(b);
        double d = point_distance(pa, pb);
        for (std::size_t k = 0; k < va.size(); ++k) d = std::max(d, tangent_distance(va[k], vb[k]));
        acc.add(d, 0.0, 1.0);
      };
      if (pair.kind == SimplicialPair::Kind::Simplicial) {
        const int n = static_cast<int>(upper.faces.size());
        for (int j = 1; j < n; ++j)
          for (int i = 0; i < j; ++i)
            compare(lower.faces[i].apply(upper.faces[j].apply(c)), lower.faces[j - 1].apply(upper.faces[i].apply(c)));
      } else {
        const FaceMapTable& upper_other = face_table(pair.upper_other);
        const FaceMapTable& lower_other = face_table(pair.lower_other);
        for (std::size_t i = 0; i < upper.faces.size(); ++i)
          for (std::size_t j = 0; j < lower.faces.size(); ++j)
            compare(lower.faces[j].apply(upper.faces[i].apply(c)),
                    lower_other.faces[i].apply(upper_other.faces[j].apply(c)));
      }
    }
  }
  return ctx.report({acc.result()}, nullptr, "N = 16 paths; analytic pushforwards");
}

CheckReport delta_squared(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "delta_squared", 1e-12);
  const int m = ctx.m();
  const BundleModel bundle = ctx.bundle(m);
  struct Case {
    std::string name;
    FormEvaluator f;
    std::string inner, outer;
    Space space;
  };
  const std::vector<Case> cases{
      {"omega on the nerve of G", form_omega(ctx.spec), "nerve_G.2", "nerve_G.3", spaces::G3()},
      {"R on the nerve of OG", form_R(ctx.spec), "nerve_OG.2", "nerve_OG.3", spaces::OG3()},
      {"B vertically", form_B(ctx.spec), "gerbe.1", "gerbe.2", spaces::PGxOG2()},
      {"epsilon vertically", form_epsilon(ctx.spec), "gerbe.2", "gerbe.3", spaces::PGxOG3()},
      {"-CS(A) horizontally", form_cs(bundle), "QG.1", "QG.2", spaces::QxG2(m)},
      {"beta_A horizontally", form_beta_A(bundle), "QPG.2", "QPG.3", spaces::QxPG3(m)},
  };
  std::vector<SubResult> subs;
  const int points = std::min(params.points, 4);
  for (const Case& c : cases) {
    const auto terms = expand_twice(c.f, face_table(c.inner), face_table(c.outer));
    Accumulator acc("delta^2 of " + c.name, ctx.tol(1e-12));
    sample(
        ctx, c.space, c.f.degree,
        [&](const Point& p, const std::vector<Tangent>& v, bool) {
          const Expanded e = evaluate_terms(terms, p, v);
          acc.add(e.value, 0.0, e.scale);
        },
        points, 2);
    subs.push_back(acc.result());
  }
  return ctx.report(std::move(subs));
}

CheckReport dh_dv_commute(const CheckParams& params, Rng& rng) {
  Context ctx(params, rng, "dh_dv_commute", 1e-12);
  const int m = ctx.m();
  const BundleModel bundle = ctx.bundle(m);
  const FormEvaluator beta = form_beta_A(bundle);
  const FormEvaluator eps = pullback(form_epsilon(ctx.spec), projection(spaces::QxPGxOG(m), spaces::PGxOG(), {2, 3}, "pr.PGxOG"));
  struct Case {
    std::string name;
    FormEvaluator f;
    std::string h_first, v_second, v_first, h_second;
    Space space;
  };
  const std::vector<Case> cases{
      {"beta_A at level (2,1)", beta, "QPG.2", "semi_v.2", "QPG_v.1", "semi_h.2", spaces::QxSemi2(m)},
      {"epsilon at level (2,2)", eps, "semi_h.2", "semi2_v.2", "QPG_v.2", "semi2_h.2", spaces::QxSemi2x2(m)},
  };
  std::vector<SubResult> subs;
  const int points = std::min(params.points, 4);
  for (const Case& c : cases) {
    const auto vh = expand_twice(c.f, face_table(c.h_first), face_table(c.v_second));
    const auto hv = expand_twice(c.f, face_table(c.v_first), face_table(c.h_second));
    Accumulator acc("dv dh = dh dv for " + c.name, ctx.tol(1e-12));
    sample(
        ctx, c.space, c.f.degree,
        [&](const Point& p, const std::vector<Tangent>& v, bool) {
          const Expanded a = evaluate_terms(vh, p, v);
          const Expanded b = evaluate_terms(hv, p, v);
          acc.add(a.value, b.value, std::max(a.scale, b.scale));
        },
        points, 2);
    subs.push_back(acc.result());
  }
  return ctx.report(std::move(subs));
}

CheckReport su2_period(const CheckParams& params, Rng& rng) {
  CheckParams su2 = params;
  su2.group = "su2";
  Context ctx(su2, rng, "su2_period", 0.02);
  const double integral = su2_omega_period(48);
  Accumulator acc("|int_SU(2) omega| = 2 pi on a 48^3 Euler-angle grid", ctx.tol(0.02));
  acc.add(std::abs(integral), 2.0 * kPi);
  char note[96];
  std::snprintf(note, sizeof note, "integral %.10f in (phi, theta, psi) order", integral);
  return ctx.report({acc.result()}, nullptr, note);
}

}  // namespace

std::vector<CheckInfo> basic_checks() {
  return {
      {"AdR_minus_R_eq_drho", "loop-group", 1e-4, AdR_minus_R_eq_drho},
      {"adjoint_phase", "loop-group", 1e-6, adjoint_phase_check},
      {"crossed_module_surrogate", "loop-group", 1e-8, crossed_module_surrogate},
      {"dB_eq_omega", "basic-gerbe", 1e-4, dB_eq_omega},
      {"d_kappa", "basic-gerbe", 1e-4, d_kappa},
      {"delta_B", "basic-gerbe", 1e-4, delta_B},
      {"delta_epsilon_eq_nu", "basic-gerbe", 1e-10, delta_epsilon_eq_nu},
      {"delta_squared", "structure", 1e-12, delta_squared},
      {"dh_dv_commute", "structure", 1e-12, dh_dv_commute},
      {"epsilon_MS_variant", "basic-gerbe", 1e-10, epsilon_MS_variant},
      {"fiber_stokes", "structure", 1e-4, fiber_stokes},
      {"maurer_cartan", "structure", 1e-6, maurer_cartan},
      {"R_identities", "loop-group", 1e-5, R_identities},
      {"simplicial_identities", "structure", 1e-12, simplicial_identities},
      {"su2_period", "normalization", 0.02, su2_period},
  };
}

}  // namespace detail

double su2_omega_period(int n) {
  if (n < 2) fail(ErrorCode::InvalidInput, "su2_omega_period: n must be at least 2");
  const GroupSpec spec = GroupSpec::su(2);
  const double c = spec.killing_coefficient();
  Matrix s2(2, 2), s3(2, 2);
  const std::complex<double> i(0.0, 1.0);
  s2 << 0.0, 1.0, -1.0, 0.0;
  s3 << i, 0.0, 0.0, -i;
  const Matrix x2 = 0.5 * s2;
  const Matrix x3 = 0.5 * s3;
  const double dphi = 2.0 * std::numbers::pi / n;
  const double dtheta = std::numbers::pi / n;
  const double dpsi = 4.0 * std::numbers::pi / n;
  double total = 0.0;
  for (int b = 0; b < n; ++b) {
    const double theta = (b + 0.5) * dtheta;
    const Matrix e_theta = exp_algebra(Matrix(theta * x2), spec);
    for (int k = 0; k < n; ++k) {
      const double psi = (k + 0.5) * dpsi;
      const Matrix e_psi = exp_algebra(Matrix(psi * x3), spec);
      // g = e^{phi X3} e^{theta X2} e^{psi X3}; left-trivialized partials.
      const Matrix tail = e_theta * e_psi;
      const Matrix u_phi = adjoint_action_inverse(tail, x3);
      const Matrix u_theta = adjoint_action_inverse(e_psi, x2);
      const Matrix& u_psi = x3;
      const double value = pairing(bracket(u_phi, u_theta), u_psi, c);
      total += static_cast<double>(n) * value;
    }
  }
  return total * dphi * dtheta * dpsi;
}

}  // namespace cs2g
