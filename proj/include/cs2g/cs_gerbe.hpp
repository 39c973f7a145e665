#pragma once

// Geometric data of the Chern-Simons bundle 2-gerbe of the trivial bundle
// Q = X x G over a chart X of dimension m.
//
// The base connection is a_i(x) = C_i + sum_j S_ij sin x_j + K_ij cos x_j, and
// A_(x,g)(v, g X) = Ad_{g^{-1}} a_x(v) + X.

#include <string>
#include <vector>

#include "cs2g/forms.hpp"

namespace cs2g {

class BundleModel {
 public:
  BundleModel(GroupSpec spec, int m);

  static BundleModel flat(const GroupSpec& spec, int m);
  static BundleModel random(const GroupSpec& spec, int m, Rng& rng, double scale = 0.5);

  const GroupSpec& spec() const noexcept { return spec_; }
  int chart_dimension() const noexcept { return m_; }
  std::uint64_t seed() const noexcept { return seed_; }
  void set_seed(std::uint64_t s) noexcept { seed_ = s; }

  Matrix& constant(int i) { return c_[i]; }
  Matrix& sine(int i, int j) { return s_[i * m_ + j]; }
  Matrix& cosine(int i, int j) { return k_[i * m_ + j]; }
  const Matrix& constant(int i) const { return c_[i]; }
  const Matrix& sine(int i, int j) const { return s_[i * m_ + j]; }
  const Matrix& cosine(int i, int j) const { return k_[i * m_ + j]; }

  // a_i(x) and d a_i / d x_j.
  Matrix coefficient(int i, const Vector& x) const;
  Matrix coefficient_partial(int i, int j, const Vector& x) const;
  // a_x(v).
  Matrix base_connection(const Vector& x, const Vector& v) const;
  // F_x(v, w) = 1/2 (d_v a_w - d_w a_v + [a_v, a_w]).
  Matrix base_curvature(const Vector& x, const Vector& v, const Vector& w) const;

  std::string to_json(int indent = 2) const;
  static BundleModel from_json(const std::string& text);

 private:
  GroupSpec spec_;
  int m_;
  std::uint64_t seed_ = 0;
  std::vector<Matrix> c_, s_, k_;
};

// On Q: the connection A (algebra-valued), its curvature F_A, and -CS(A).
FormEvaluator form_connection(const BundleModel& bundle);
FormEvaluator form_curvature(const BundleModel& bundle);
FormEvaluator form_cs(const BundleModel& bundle);
// On the chart: a (algebra-valued), F, and the 4-curvature -<F ^ F>.
FormEvaluator form_base_connection(const BundleModel& bundle);
FormEvaluator form_base_curvature(const BundleModel& bundle);
FormEvaluator four_curvature(const BundleModel& bundle);
// -<F, F> / 2 pi and tr(F^2) / 16 pi^2 for chart vectors (v, w, y, z): the
// two sides of the first fractional Pontryagin normalization on so(n).
double pontryagin_lhs(const BundleModel& bundle, const Vector& x, const std::vector<Vector>& v);
double pontryagin_rhs(const BundleModel& bundle, const Vector& x, const std::vector<Vector>& v);

// On Q x G: <pr_1^* A, pr_2^* Theta_hat>.
FormEvaluator form_A_theta_hat(const BundleModel& bundle);
// On Q x PG: pr^* B - pi^* <pr_1^* A, pr_2^* Theta_hat>.
FormEvaluator form_beta_A(const BundleModel& bundle);
// On PG^2 and on Q x PG^2: 2 int <Theta_p, phi_hat_q>.
FormEvaluator form_alpha_paths(const GroupSpec& spec);
FormEvaluator form_alpha(const GroupSpec& spec, int m = 0);

// Horizontal lift (v, -Ad_{g^{-1}} a_x(v)) of a chart vector at (x, g).
Tangent horizontal_lift(const BundleModel& bundle, const Point& q, const Vector& v);

// (x, g, p) -> p and (x, g, p, q) -> (p(2 pi), q(2 pi)) etc.
SmoothMap pr_path(int m = 0);
SmoothMap pr_group_pair(int m = 0);  // Q x G^2 -> G^2, (x, g, h1, h2) -> (h1, h2)
SmoothMap pr_last_group(int m = 0);  // Q x G -> G, (x, g, h) -> h
SmoothMap pr_endpoint_pair(int m = 0);  // Q x PG^2 -> G^2

}  // namespace cs2g
