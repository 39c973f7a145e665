#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cs2g/catalog.hpp"
#include "cs2g/cs_gerbe.hpp"
#include "cs2g/faces.hpp"
#include "cs2g/forms.hpp"
#include "cs2g/verify.hpp"

namespace cs2g::detail {

// Largest |lhs - rhs| and largest scale over all samples of one identity.
class Accumulator {
 public:
  Accumulator(std::string name, double tolerance) : name_(std::move(name)), tolerance_(tolerance) {}

  // scale_hint is the magnitude of the individual terms that make up a side
  // whose value is expected to cancel to zero.
  void add(const FormValue& lhs, const FormValue& rhs, double scale_hint = 0.0);
  void add(double lhs, double rhs, double scale_hint = 0.0) { add(FormValue(lhs), FormValue(rhs), scale_hint); }

  double max_abs() const noexcept { return max_abs_; }
  double max_scale() const noexcept { return max_scale_; }
  SubResult result() const;

 private:
  std::string name_;
  double tolerance_;
  int samples_ = 0;
  double max_abs_ = 0.0;
  double max_scale_ = 0.0;
};

// Observed order of a central difference from its values at h, 2h and 4h.
class OrderTracker {
 public:
  void add(const FormValue& d1, const FormValue& d2, const FormValue& d4, double h);
  std::optional<double> order() const;
  bool exact() const noexcept { return measured_ == 0 && seen_ > 0 && !noisy_; }

 private:
  std::vector<double> orders_;
  int measured_ = 0;
  int seen_ = 0;
  bool noisy_ = false;
};

// d f at step h, with 2h and 4h copies evaluated when an order is requested.
class FdForm {
 public:
  FdForm(const FormEvaluator& f, double h);
  FormValue operator()(const Point& p, const std::vector<Tangent>& v, OrderTracker* order = nullptr) const;
  const FormEvaluator& at_h() const noexcept { return d1_; }

 private:
  FormEvaluator d1_, d2_, d4_;
  double h_;
};

struct Context {
  const CheckParams& params;
  GroupSpec spec;
  Rng& rng;
  std::string check;
  double default_tolerance;

  Context(const CheckParams& p, Rng& r, std::string name, double tol);

  int m() const noexcept { return params.chart_dim; }
  double tol(double fallback) const;
  Point point(const Space& space, int n = 0);
  Point point_with(const Space& space, int n, const GroupSpec& group);
  std::vector<Tangent> tangents(const Space& space, const Point& point, int k);
  BundleModel bundle(int m);

  CheckReport report(std::vector<SubResult> subresults, const OrderTracker* order = nullptr,
                     std::string note = "") const;
};

// The signed pullbacks whose sum is the coboundary, for term-size scales.
std::vector<FormEvaluator> coboundary_terms(const FormEvaluator& f, const FaceMapTable& faces);
// Sum and largest term magnitude.
struct Expanded {
  FormValue value;
  double scale = 0.0;
};
Expanded evaluate_terms(const std::vector<FormEvaluator>& terms, const Point& p, const std::vector<Tangent>& v);

// delta(delta f) expanded into its signed terms.
std::vector<FormEvaluator> expand_twice(const FormEvaluator& f, const FaceMapTable& inner, const FaceMapTable& outer);

// Runs body(point, tangents, first_set) over random points and tangent sets;
// zero counts fall back to the configured ones.
template <class Body>
void sample(Context& ctx, const Space& space, int degree, Body body, int points = 0, int sets = 0, int n = 0) {
  const int np = points > 0 ? points : ctx.params.points;
  const int ns = sets > 0 ? sets : ctx.params.tangent_sets;
  for (int i = 0; i < np; ++i) {
    const Point p = ctx.point(space, n);
    for (int j = 0; j < ns; ++j) body(p, ctx.tangents(space, p, degree), j == 0);
  }
}

// Factorwise max-norm distance of points and tangents; paths include derivatives.
double point_distance(const Point& a, const Point& b);
double tangent_distance(const Tangent& a, const Tangent& b);

std::vector<CheckInfo> basic_checks();
std::vector<CheckInfo> cs_checks();

}  // namespace cs2g::detail
