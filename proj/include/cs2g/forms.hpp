#pragma once

// Differential forms on finite products of chart, group, path, loop and
// loop-family factors.
//
// Forms are evaluated in the Kobayashi-Nomizu normalization:
//   (a ^ b)(X_1..X_{p+q}) = 1/(p+q)! sum_sigma sgn(sigma) a(..) b(..),
//   df(X_0..X_k) = 1/(k+1) [ sum_i (-1)^i X_i f(..^i..)
//                          + sum_{i<j} (-1)^{i+j} f([X_i,X_j], ..^i..^j..) ].
// Tangents on group-like factors are in left representation and are extended
// left-invariantly; chart tangents are extended by constants.

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "cs2g/path_space.hpp"

namespace cs2g {

using Vector = Eigen::VectorXd;

enum class FactorKind { Chart, Group, Path, Loop, Family };

struct FactorSpec {
  FactorKind kind;
  int dim = 0;  // chart dimension; 0 accepts any
};

struct Space {
  std::string name;
  std::vector<FactorSpec> factors;

  std::size_t arity() const noexcept { return factors.size(); }
  bool operator==(const Space& other) const;
};

namespace spaces {
Space chart(int m = 0);
Space G();
Space G2();
Space G3();
Space OG();
Space OG2();
Space OG3();
Space PG();
Space PG2();
Space PG3();
Space PGxOG();
Space PGxOG2();
Space PGxOG3();
Space PGxPOG();
Space PGxPOGxI();
Space Q(int m = 0);
Space QxG(int m = 0);
Space QxG2(int m = 0);
Space QxG3(int m = 0);
Space QxPG(int m = 0);
Space QxPG2(int m = 0);
Space QxPG3(int m = 0);
Space QxPGxOG(int m = 0);
Space QxPGxOG2(int m = 0);
Space QxSemi2(int m = 0);   // Q x (PG x| OG)^2
Space QxSemi2x2(int m = 0); // Q x (PG x| OG^2)^2
// Appends a one-dimensional fiber coordinate t in [0, 2 pi].
Space with_fiber(const Space& base);
}  // namespace spaces

using Factor = std::variant<Vector, Matrix, SampledPath, LoopFamily>;
using TangentFactor = std::variant<Vector, Matrix, PathTangent, FamilyTangent>;
using Point = std::vector<Factor>;
using Tangent = std::vector<TangentFactor>;

void validate_point(const Space& space, const Point& point);
void validate_tangent(const Space& space, const Point& point, const Tangent& tangent);

// p exp(s X) factorwise; chart factors translate.
Point move(const Point& point, const Tangent& tangent, double s);
// Factorwise bracket of left-invariant extensions; zero on chart factors.
Tangent bracket(const Tangent& x, const Tangent& y);
Tangent combine(double a, const Tangent& x, double b, const Tangent& y);
Tangent zero_tangent(const Point& point);

Point random_point(const Space& space, const GroupSpec& spec, int n, Rng& rng);
Tangent random_tangent(const Space& space, const Point& point, const GroupSpec& spec, Rng& rng);

enum class ValueKind { Scalar, Algebra };

class FormValue {
 public:
  FormValue() : FormValue(0.0) {}
  FormValue(double s) : m_(Matrix::Constant(1, 1, s)), kind_(ValueKind::Scalar) {}
  explicit FormValue(Matrix a) : m_(std::move(a)), kind_(ValueKind::Algebra) {}

  ValueKind kind() const noexcept { return kind_; }
  double scalar() const;
  const Matrix& algebra() const;
  double magnitude() const;

  FormValue& operator+=(const FormValue& o);
  FormValue& operator-=(const FormValue& o);
  FormValue& operator*=(double s);

 private:
  Matrix m_;
  ValueKind kind_;
};
FormValue operator+(FormValue a, const FormValue& b);
FormValue operator-(FormValue a, const FormValue& b);
FormValue operator*(double s, FormValue a);
double distance(const FormValue& a, const FormValue& b);

using FormFunction = std::function<FormValue(const Point&, const std::vector<Tangent>&)>;

struct FormEvaluator {
  std::string name;
  Space space;
  int degree = 0;
  ValueKind kind = ValueKind::Scalar;
  FormFunction eval;

  // Validates the point and the number of tangents, then evaluates.
  FormValue operator()(const Point& point, const std::vector<Tangent>& tangents) const;
};

FormEvaluator operator+(const FormEvaluator& a, const FormEvaluator& b);
FormEvaluator operator-(const FormEvaluator& a, const FormEvaluator& b);
FormEvaluator operator*(double s, const FormEvaluator& a);

// A factor carried together with k tangent directions; maps act on both.
struct CFactor {
  Factor value;
  std::vector<TangentFactor> dirs;
};
using CPoint = std::vector<CFactor>;

CPoint carry(const Point& point, const std::vector<Tangent>& tangents);
std::pair<Point, std::vector<Tangent>> uncarry(const CPoint& c);

// Primitive maps with their exact tangent maps.
namespace prim {
// Group or path product; tangent (X, Y) -> Ad_{b^{-1}} X + Y.
CFactor mult(const CFactor& a, const CFactor& b);
// Tangent X -> -Ad_a X.
CFactor inverse(const CFactor& a);
// Endpoint p(2 pi); tangent X -> X(2 pi).
CFactor ev(const CFactor& a);
// b^{-1} a b.
CFactor conj_inverse(const CFactor& b, const CFactor& a);
// Evaluation of a loop family at the chart coordinate t.
CFactor family_ev(const CFactor& family, const CFactor& t);
}  // namespace prim

struct SmoothMap {
  std::string name;
  Space domain;
  Space codomain;
  std::function<CPoint(const CPoint&)> apply;

  Point operator()(const Point& point) const;
};

SmoothMap identity_map(const Space& space);
SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

enum class PushMode { Analytic, FiniteDifference };

std::vector<Tangent> pushforward(const SmoothMap& map, const Point& point,
                                 const std::vector<Tangent>& tangents,
                                 PushMode mode = PushMode::Analytic, double h_push = 1e-5);

// Registered maps by name; unknown names raise ErrorCode::UnknownMap.
const SmoothMap& lookup_map(const std::string& name);
std::vector<std::string> registered_maps();
void register_map(const SmoothMap& map);

FormEvaluator pullback(const FormEvaluator& f, const SmoothMap& map);

enum class Direction { Horizontal, Vertical };

struct FaceMapTable {
  std::string name;
  Direction direction = Direction::Horizontal;
  Space domain;
  Space codomain;
  std::vector<SmoothMap> faces;
};

FormEvaluator coboundary(const FormEvaluator& f, const FaceMapTable& faces);

FormEvaluator exterior_derivative(const FormEvaluator& f, double h = 1e-4);

// For f on Z x [0, 2 pi] (fiber coordinate last), the form on Z given by
// k * integral of f((0, T_t), (X_1, 0), ..) dt; Gregory quadrature on n_t intervals.
FormEvaluator fiber_integrate(const FormEvaluator& f, int n_t);
// f restricted to the slice Z x {t}.
FormEvaluator fiber_slice(const FormEvaluator& f, double t);

}  // namespace cs2g
