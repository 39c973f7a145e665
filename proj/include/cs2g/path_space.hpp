#pragma once

// Discretized based path group PG and loop group OmegaG on the grid
// theta_k = 2 pi k / N, k = 0..N.
//
// Paths and tangents carry their theta-derivative at every node alongside the
// value. Group operations propagate both by the product rule, so Higgs fields
// and derivatives of pushed tangents are exact up to round-off.

#include <functional>
#include <vector>

#include "cs2g/lie.hpp"

namespace cs2g {

enum class PathKind { Path, Loop };

class GridSpec {
 public:
  explicit GridSpec(int n);
  int N() const noexcept { return n_; }
  double step() const noexcept;
  double theta(int k) const noexcept { return step() * k; }
  int nodes() const noexcept { return n_ + 1; }

 private:
  int n_;
};

// p(theta) at theta_k for k = 0..N, with p(0) = 1 (and p(2 pi) = 1 for loops).
struct SampledPath {
  GroupSpec spec;
  PathKind kind;
  std::vector<Matrix> values;
  std::vector<Matrix> derivs;

  int N() const noexcept { return static_cast<int>(values.size()) - 1; }
  GridSpec grid() const { return GridSpec(N()); }

  static SampledPath identity(const GroupSpec& spec, int n, PathKind kind);
  // Derivatives are taken by theta_derivative on the matrix entries.
  static SampledPath from_samples(const GroupSpec& spec, PathKind kind, std::vector<Matrix> values);
  // p = exp(v) for an algebra-valued v given with its derivative.
  static SampledPath from_exponent(const GroupSpec& spec, int n, PathKind kind,
                                   const std::function<ExpJet(double)>& v_and_dv);
  void validate(double tol = 1e-10) const;
};
using SampledLoop = SampledPath;

// Left-representation tangent theta -> p(theta) X(theta).
struct PathTangent {
  PathKind kind = PathKind::Path;
  std::vector<Matrix> values;
  std::vector<Matrix> derivs;

  int N() const noexcept { return static_cast<int>(values.size()) - 1; }

  static PathTangent zero(const GroupSpec& spec, int n, PathKind kind);
  static PathTangent from_samples(PathKind kind, std::vector<Matrix> values);
  static PathTangent from_function(int n, PathKind kind, const std::function<ExpJet(double)>& x_and_dx);

  PathTangent& operator+=(const PathTangent& other);
  PathTangent& operator-=(const PathTangent& other);
  PathTangent& operator*=(double s);
};
PathTangent operator+(PathTangent a, const PathTangent& b);
PathTangent operator-(PathTangent a, const PathTangent& b);
PathTangent operator*(double s, PathTangent a);

// Fourth-order differences of an algebra- or matrix-valued grid: periodic for
// loops, one-sided at the two ends for paths.
std::vector<Matrix> theta_derivative(const std::vector<Matrix>& grid, PathKind kind);
std::vector<double> theta_derivative(const std::vector<double>& grid, PathKind kind);

// phi_p = p^{-1} dp and phi_hat_p = Ad_p phi_p, projected to the algebra.
std::vector<Matrix> higgs(const SampledPath& p);
std::vector<Matrix> higgs_hat(const SampledPath& p);
// The same fields with their own theta-derivatives.
PathTangent higgs_jet(const SampledPath& p);
PathTangent higgs_hat_jet(const SampledPath& p);

SampledPath path_multiply(const SampledPath& p, const SampledPath& q);
SampledPath path_inverse(const SampledPath& p);
// (q gamma q^{-1})(theta).
SampledLoop loop_adjoint_action(const SampledPath& q, const SampledLoop& gamma);
Matrix ev_2pi(const SampledPath& p);
// p(theta) exp(s X(theta)).
SampledPath move(const SampledPath& p, const PathTangent& x, double s);

// Pointwise Ad_p X, Ad_{p^{-1}} X and [X, Y] with derivatives.
PathTangent adjoint_action(const SampledPath& p, const PathTangent& x);
PathTangent adjoint_action_inverse(const SampledPath& p, const PathTangent& x);
PathTangent bracket(const PathTangent& x, const PathTangent& y);
PathTangent project_algebra(const GroupSpec& spec, PathTangent x);

// Integral over [0, 2 pi]: eighth-order Gregory end-corrected trapezoid for
// paths, periodic trapezoid for loops.
std::vector<double> quadrature_weights(int n, PathKind kind);
double quadrature(const std::vector<double>& values, PathKind kind);

// theta-integral of <X, Y> with the group's pairing.
double integrate_pairing(const std::vector<Matrix>& x, const std::vector<Matrix>& y,
                         const GroupSpec& spec, PathKind kind);

struct RandomPathOptions {
  int modes = 3;
  double amplitude = 0.5;
  double drift = 1.0;
};
SampledPath random_path(const GroupSpec& spec, int n, PathKind kind, Rng& rng,
                        const RandomPathOptions& options = {});
PathTangent random_tangent(const GroupSpec& spec, int n, PathKind kind, Rng& rng,
                           const RandomPathOptions& options = {});

// A smooth path t -> f(t) in OmegaG with f(0) the constant loop, evaluated at
// arbitrary t.
struct LoopFamily {
  GroupSpec spec;
  int n = 0;
  std::function<SampledLoop(double)> at;
};
// A tangent t -> F(t) to a LoopFamily (left representation, F(0) = 0).
struct FamilyTangent {
  std::function<PathTangent(double)> at;
};

// f(t) = exp(tau V1 + tau^2 V2) with tau = t / 2 pi.
LoopFamily polynomial_family(const GroupSpec& spec, const PathTangent& v1, const PathTangent& v2);
LoopFamily random_family(const GroupSpec& spec, int n, Rng& rng);
FamilyTangent random_family_tangent(const GroupSpec& spec, int n, Rng& rng);
LoopFamily move(const LoopFamily& f, const FamilyTangent& x, double s);
FamilyTangent operator+(const FamilyTangent& a, const FamilyTangent& b);
FamilyTangent operator*(double s, const FamilyTangent& a);
FamilyTangent bracket(const FamilyTangent& x, const FamilyTangent& y);
// f(t)^{-1} d/dt f(t) by a five-point stencil of width ht.
PathTangent log_t_derivative(const LoopFamily& f, double t, double ht = 1e-3);

// The family sampled on an (N_t + 1) x (N_theta + 1) grid; slice k is f(t_k).
struct LoopOfLoops {
  GridSpec grid_t;
  std::vector<SampledLoop> slices;

  static LoopOfLoops sample(const LoopFamily& f, int n_t);
  void validate(double tol = 1e-10) const;
};

}  // namespace cs2g
