#include "cs2g/forms.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <optional>

#include <unsupported/Eigen/MatrixFunctions>

#include "cs2g/faces.hpp"

namespace cs2g {

namespace {


template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Space make_space(std::string name, std::vector<FactorSpec> factors) {
  return Space{std::move(name), std::move(factors)};
}

FactorSpec chart_f(int m) { return {FactorKind::Chart, m}; }
const FactorSpec kG{FactorKind::Group, 0};
const FactorSpec kP{FactorKind::Path, 0};
const FactorSpec kL{FactorKind::Loop, 0};
const FactorSpec kF{FactorKind::Family, 0};

const char* kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::Chart: return "chart";
    case FactorKind::Group: return "group";
    case FactorKind::Path: return "path";
    case FactorKind::Loop: return "loop";
    case FactorKind::Family: return "loop-family";
  }
  return "?";
}

}  // namespace

bool Space::operator==(const Space& other) const {
  if (factors.size() != other.factors.size()) return false;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const FactorSpec& a = factors[i];
    const FactorSpec& b = other.factors[i];
    if (a.kind != b.kind) return false;
    if (a.kind == FactorKind::Chart && a.dim != 0 && b.dim != 0 && a.dim != b.dim) return false;
  }
  return true;
}

namespace spaces {
Space chart(int m) { return make_space("X", {chart_f(m)}); }
Space G() { return make_space("G", {kG}); }
Space G2() { return make_space("G^2", {kG, kG}); }
Space G3() { return make_space("G^3", {kG, kG, kG}); }
Space OG() { return make_space("OG", {kL}); }
Space OG2() { return make_space("OG^2", {kL, kL}); }
Space OG3() { return make_space("OG^3", {kL, kL, kL}); }
Space PG() { return make_space("PG", {kP}); }
Space PG2() { return make_space("PG^2", {kP, kP}); }
Space PG3() { return make_space("PG^3", {kP, kP, kP}); }
Space PGxOG() { return make_space("PGxOG", {kP, kL}); }
Space PGxOG2() { return make_space("PGxOG^2", {kP, kL, kL}); }
Space PGxOG3() { return make_space("PGxOG^3", {kP, kL, kL, kL}); }
Space PGxPOG() { return make_space("PGxPOG", {kP, kF}); }
Space PGxPOGxI() { return with_fiber(PGxPOG()); }
Space Q(int m) { return make_space("Q", {chart_f(m), kG}); }
Space QxG(int m) { return make_space("QxG", {chart_f(m), kG, kG}); }
Space QxG2(int m) { return make_space("QxG^2", {chart_f(m), kG, kG, kG}); }
Space QxG3(int m) { return make_space("QxG^3", {chart_f(m), kG, kG, kG, kG}); }
Space QxPG(int m) { return make_space("QxPG", {chart_f(m), kG, kP}); }
Space QxPG2(int m) { return make_space("QxPG^2", {chart_f(m), kG, kP, kP}); }
Space QxPG3(int m) { return make_space("QxPG^3", {chart_f(m), kG, kP, kP, kP}); }
Space QxPGxOG(int m) { return make_space("QxPGxOG", {chart_f(m), kG, kP, kL}); }
Space QxPGxOG2(int m) { return make_space("QxPGxOG^2", {chart_f(m), kG, kP, kL, kL}); }
Space QxSemi2(int m) { return make_space("Qx(PGxOG)^2", {chart_f(m), kG, kP, kL, kP, kL}); }
Space QxSemi2x2(int m) {
  return make_space("Qx(PGxOG^2)^2", {chart_f(m), kG, kP, kL, kL, kP, kL, kL});
}
Space with_fiber(const Space& base) {
  Space s = base;
  s.name += "xI";
  s.factors.push_back(chart_f(1));
  return s;
}
}  // namespace spaces

void validate_point(const Space& space, const Point& point) {
  if (point.size() != space.arity())
    fail(ErrorCode::InvalidSpace, "point has " + std::to_string(point.size()) + " factors, space " + space.name +
                                      " needs " + std::to_string(space.arity()));
  for (std::size_t i = 0; i < point.size(); ++i) {
    const FactorSpec& fs = space.factors[i];
    bool ok = false;
    switch (fs.kind) {
      case FactorKind::Chart: {
        const Vector* v = std::get_if<Vector>(&point[i]);
        ok = v && (fs.dim == 0 || v->size() == fs.dim);
        break;
      }
      case FactorKind::Group: ok = std::holds_alternative<Matrix>(point[i]); break;
      case FactorKind::Path: ok = std::holds_alternative<SampledPath>(point[i]); break;
      case FactorKind::Loop: {
        const SampledPath* p = std::get_if<SampledPath>(&point[i]);
        ok = p && p->kind == PathKind::Loop;
        break;
      }
      case FactorKind::Family: ok = std::holds_alternative<LoopFamily>(point[i]); break;
    }
    if (!ok)
      fail(ErrorCode::InvalidSpace, "factor " + std::to_string(i) + " of " + space.name + " is not a " +
                                        kind_name(fs.kind) + " point");
  }
}

void validate_tangent(const Space& space, const Point& point, const Tangent& tangent) {
  if (tangent.size() != space.arity()) fail(ErrorCode::InvalidSpace, "tangent arity does not match " + space.name);
  for (std::size_t i = 0; i < tangent.size(); ++i) {
    bool ok = false;
    switch (space.factors[i].kind) {
      case FactorKind::Chart: {
        const Vector* v = std::get_if<Vector>(&tangent[i]);
        ok = v && v->size() == std::get<Vector>(point[i]).size();
        break;
      }
      case FactorKind::Group: ok = std::holds_alternative<Matrix>(tangent[i]); break;
      case FactorKind::Path:
      case FactorKind::Loop: {
        const PathTangent* x = std::get_if<PathTangent>(&tangent[i]);
        ok = x && x->values.size() == std::get<SampledPath>(point[i]).values.size();
        break;
      }
      case FactorKind::Family: ok = std::holds_alternative<FamilyTangent>(tangent[i]); break;
    }
    if (!ok) fail(ErrorCode::InvalidSpace, "tangent factor " + std::to_string(i) + " does not match " + space.name);
  }
}

Point move(const Point& point, const Tangent& tangent, double s) {
  if (point.size() != tangent.size()) fail(ErrorCode::InvalidSpace, "move: arity mismatch");
  Point out;
  out.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    out.push_back(std::visit(
        overloaded{
            [&](const Vector& x) -> Factor { return Vector(x + s * std::get<Vector>(tangent[i])); },
            [&](const Matrix& g) -> Factor {
              return Matrix(g * (s * std::get<Matrix>(tangent[i])).exp());
            },
            [&](const SampledPath& p) -> Factor { return move(p, std::get<PathTangent>(tangent[i]), s); },
            [&](const LoopFamily& f) -> Factor { return move(f, std::get<FamilyTangent>(tangent[i]), s); },
        },
        point[i]));
  }
  return out;
}

Tangent bracket(const Tangent& x, const Tangent& y) {
  if (x.size() != y.size()) fail(ErrorCode::InvalidSpace, "bracket: arity mismatch");
  Tangent out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(std::visit(
        overloaded{
            [&](const Vector& a) -> TangentFactor { return Vector::Zero(a.size()).eval(); },
            [&](const Matrix& a) -> TangentFactor {
              const Matrix& b = std::get<Matrix>(y[i]);
              return Matrix(a * b - b * a);
            },
            [&](const PathTangent& a) -> TangentFactor { return bracket(a, std::get<PathTangent>(y[i])); },
            [&](const FamilyTangent& a) -> TangentFactor { return bracket(a, std::get<FamilyTangent>(y[i])); },
        },
        x[i]));
  }
  return out;
}

Tangent combine(double a, const Tangent& x, double b, const Tangent& y) {
  if (x.size() != y.size()) fail(ErrorCode::InvalidSpace, "combine: arity mismatch");
  Tangent out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(std::visit(
        overloaded{
            [&](const Vector& u) -> TangentFactor { return Vector(a * u + b * std::get<Vector>(y[i])); },
            [&](const Matrix& u) -> TangentFactor { return Matrix(a * u + b * std::get<Matrix>(y[i])); },
            [&](const PathTangent& u) -> TangentFactor { return a * u + b * std::get<PathTangent>(y[i]); },
            [&](const FamilyTangent& u) -> TangentFactor { return a * u + b * std::get<FamilyTangent>(y[i]); },
        },
        x[i]));
  }
  return out;
}

Tangent zero_tangent(const Point& point) {
  Tangent out;
  out.reserve(point.size());
  for (const Factor& f : point) {
    out.push_back(std::visit(
        overloaded{
            [](const Vector& x) -> TangentFactor { return Vector::Zero(x.size()).eval(); },
            [](const Matrix& g) -> TangentFactor { return Matrix::Zero(g.rows(), g.cols()).eval(); },
            [](const SampledPath& p) -> TangentFactor { return PathTangent::zero(p.spec, p.N(), p.kind); },
            [](const LoopFamily& f) -> TangentFactor {
              const PathTangent z = PathTangent::zero(f.spec, f.n, PathKind::Loop);
              return FamilyTangent{[z](double) { return z; }};
            },
        },
        f));
  }
  return out;
}

Point random_point(const Space& space, const GroupSpec& spec, int n, Rng& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Point out;
  for (const FactorSpec& fs : space.factors) {
    switch (fs.kind) {
      case FactorKind::Chart: {
        Vector x(fs.dim == 0 ? 3 : fs.dim);
        for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = uniform(rng);
        out.emplace_back(x);
        break;
      }
      case FactorKind::Group: out.emplace_back(random_group(spec, rng)); break;
      case FactorKind::Path: out.emplace_back(random_path(spec, n, PathKind::Path, rng)); break;
      case FactorKind::Loop: out.emplace_back(random_path(spec, n, PathKind::Loop, rng)); break;
      case FactorKind::Family: out.emplace_back(random_family(spec, n, rng)); break;
    }
  }
  return out;
}

Tangent random_tangent(const Space& space, const Point& point, const GroupSpec& spec, Rng& rng) {
  validate_point(space, point);
  std::normal_distribution<double> normal(0.0, 1.0);
  Tangent out;
  for (std::size_t i = 0; i < point.size(); ++i) {
    switch (space.factors[i].kind) {
      case FactorKind::Chart: {
        Vector v(std::get<Vector>(point[i]).size());
        for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = normal(rng);
        out.emplace_back(v);
        break;
      }
      case FactorKind::Group: out.emplace_back(random_algebra(spec, rng)); break;
      case FactorKind::Path:
      case FactorKind::Loop: {
        const SampledPath& p = std::get<SampledPath>(point[i]);
        out.emplace_back(random_tangent(spec, p.N(), p.kind, rng));
        break;
      }
      case FactorKind::Family: {
        const LoopFamily& f = std::get<LoopFamily>(point[i]);
        out.emplace_back(random_family_tangent(spec, f.n, rng));
        break;
      }
    }
  }
  return out;
}

double FormValue::scalar() const {
  if (kind_ != ValueKind::Scalar) fail(ErrorCode::InvalidInput, "form value is algebra-valued");
  return m_(0, 0).real();
}

const Matrix& FormValue::algebra() const {
  if (kind_ != ValueKind::Algebra) fail(ErrorCode::InvalidInput, "form value is scalar");
  return m_;
}

double FormValue::magnitude() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

FormValue& FormValue::operator+=(const FormValue& o) {
  if (kind_ != o.kind_ || m_.rows() != o.m_.rows()) fail(ErrorCode::InvalidInput, "form value kind mismatch");
  m_ += o.m_;
  return *this;
}

FormValue& FormValue::operator-=(const FormValue& o) {
  if (kind_ != o.kind_ || m_.rows() != o.m_.rows()) fail(ErrorCode::InvalidInput, "form value kind mismatch");
  m_ -= o.m_;
  return *this;
}

FormValue& FormValue::operator*=(double s) {
  m_ *= s;
  return *this;
}

FormValue operator+(FormValue a, const FormValue& b) { return a += b; }
FormValue operator-(FormValue a, const FormValue& b) { return a -= b; }
FormValue operator*(double s, FormValue a) { return a *= s; }
double distance(const FormValue& a, const FormValue& b) { return (a - b).magnitude(); }

FormValue FormEvaluator::operator()(const Point& point, const std::vector<Tangent>& tangents) const {
  validate_point(space, point);
  if (static_cast<int>(tangents.size()) != degree)
    fail(ErrorCode::InvalidInput, name + " expects " + std::to_string(degree) + " tangents, got " +
                                      std::to_string(tangents.size()));
  for (const Tangent& t : tangents) validate_tangent(space, point, t);
  return eval(point, tangents);
}

namespace {

void require_compatible(const FormEvaluator& a, const FormEvaluator& b) {
  if (!(a.space == b.space) || a.degree != b.degree || a.kind != b.kind)
    fail(ErrorCode::InvalidInput, "cannot combine forms " + a.name + " and " + b.name);
}

}  // namespace

FormEvaluator operator+(const FormEvaluator& a, const FormEvaluator& b) {
  require_compatible(a, b);
  return FormEvaluator{"(" + a.name + "+" + b.name + ")", a.space, a.degree, a.kind,
                       [fa = a.eval, fb = b.eval](const Point& p, const std::vector<Tangent>& v) {
                         return fa(p, v) + fb(p, v);
                       }};
}

FormEvaluator operator-(const FormEvaluator& a, const FormEvaluator& b) {
  require_compatible(a, b);
  return FormEvaluator{"(" + a.name + "-" + b.name + ")", a.space, a.degree, a.kind,
                       [fa = a.eval, fb = b.eval](const Point& p, const std::vector<Tangent>& v) {
                         return fa(p, v) - fb(p, v);
                       }};
}

FormEvaluator operator*(double s, const FormEvaluator& a) {
  return FormEvaluator{a.name, a.space, a.degree, a.kind,
                       [fa = a.eval, s](const Point& p, const std::vector<Tangent>& v) { return s * fa(p, v); }};
}

CPoint carry(const Point& point, const std::vector<Tangent>& tangents) {
  CPoint c;
  c.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    CFactor f{point[i], {}};
    for (const Tangent& t : tangents) {
      if (t.size() != point.size()) fail(ErrorCode::InvalidSpace, "carry: tangent arity mismatch");
      f.dirs.push_back(t[i]);
    }
    c.push_back(std::move(f));
  }
  return c;
}

std::pair<Point, std::vector<Tangent>> uncarry(const CPoint& c) {
  Point point;
  std::vector<Tangent> tangents(c.empty() ? 0 : c.front().dirs.size());
  for (const CFactor& f : c) {
    point.push_back(f.value);
    if (f.dirs.size() != tangents.size()) fail(ErrorCode::InvalidInput, "uncarry: ragged tangents");
    for (std::size_t j = 0; j < f.dirs.size(); ++j) tangents[j].push_back(f.dirs[j]);
  }
  return {std::move(point), std::move(tangents)};
}

namespace prim {

CFactor mult(const CFactor& a, const CFactor& b) {
  if (a.dirs.size() != b.dirs.size()) fail(ErrorCode::InvalidInput, "mult: tangent count mismatch");
  CFactor out;
  if (const Matrix* ga = std::get_if<Matrix>(&a.value)) {
    const Matrix* gb = std::get_if<Matrix>(&b.value);
    if (!gb) fail(ErrorCode::InvalidInput, "mult: factor kind mismatch");
    out.value = Matrix((*ga) * (*gb));
    const Matrix gbi = gb->adjoint();
    for (std::size_t j = 0; j < a.dirs.size(); ++j)
      out.dirs.push_back(Matrix(gbi * std::get<Matrix>(a.dirs[j]) * (*gb) + std::get<Matrix>(b.dirs[j])));
    return out;
  }
  const SampledPath* pa = std::get_if<SampledPath>(&a.value);
  const SampledPath* pb = std::get_if<SampledPath>(&b.value);
  if (!pa || !pb) fail(ErrorCode::InvalidInput, "mult: factor kind mismatch");
  const SampledPath prod = path_multiply(*pa, *pb);
  for (std::size_t j = 0; j < a.dirs.size(); ++j) {
    PathTangent x = adjoint_action_inverse(*pb, std::get<PathTangent>(a.dirs[j])) + std::get<PathTangent>(b.dirs[j]);
    x.kind = prod.kind;
    out.dirs.push_back(std::move(x));
  }
  out.value = prod;
  return out;
}

CFactor inverse(const CFactor& a) {
  CFactor out;
  if (const Matrix* g = std::get_if<Matrix>(&a.value)) {
    out.value = Matrix(g->adjoint());
    for (const TangentFactor& d : a.dirs) out.dirs.push_back(Matrix(-((*g) * std::get<Matrix>(d) * g->adjoint())));
    return out;
  }
  const SampledPath* p = std::get_if<SampledPath>(&a.value);
  if (!p) fail(ErrorCode::InvalidInput, "inverse: factor kind mismatch");
  for (const TangentFactor& d : a.dirs) out.dirs.push_back(-1.0 * adjoint_action(*p, std::get<PathTangent>(d)));
  out.value = path_inverse(*p);
  return out;
}

CFactor ev(const CFactor& a) {
  const SampledPath* p = std::get_if<SampledPath>(&a.value);
  if (!p) fail(ErrorCode::InvalidInput, "ev: factor is not a path");
  CFactor out{ev_2pi(*p), {}};
  for (const TangentFactor& d : a.dirs) out.dirs.push_back(std::get<PathTangent>(d).values.back());
  return out;
}

CFactor conj_inverse(const CFactor& b, const CFactor& a) {
  CFactor out = mult(mult(inverse(b), a), b);
  if (const SampledPath* pa = std::get_if<SampledPath>(&a.value)) {
    std::get<SampledPath>(out.value).kind = pa->kind;
    for (TangentFactor& d : out.dirs) std::get<PathTangent>(d).kind = pa->kind;
  }
  return out;
}

CFactor family_ev(const CFactor& family, const CFactor& t) {
  const LoopFamily* f = std::get_if<LoopFamily>(&family.value);
  const Vector* tv = std::get_if<Vector>(&t.value);
  if (!f || !tv || tv->size() != 1) fail(ErrorCode::InvalidInput, "family_ev: expects (loop family, t)");
  const double time = (*tv)(0);
  CFactor out{f->at(time), {}};
  if (family.dirs.empty()) return out;
  const PathTangent log_dt = log_t_derivative(*f, time);
  for (std::size_t j = 0; j < family.dirs.size(); ++j) {
    const double tau = std::get<Vector>(t.dirs[j])(0);
    PathTangent x = std::get<FamilyTangent>(family.dirs[j]).at(time) + tau * log_dt;
    x.kind = PathKind::Loop;
    out.dirs.push_back(std::move(x));
  }
  return out;
}

}  // namespace prim

Point SmoothMap::operator()(const Point& point) const {
  validate_point(domain, point);
  return uncarry(apply(carry(point, {}))).first;
}

SmoothMap identity_map(const Space& space) {
  return SmoothMap{"id", space, space, [](const CPoint& c) { return c; }};
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (!(outer.domain == inner.codomain))
    fail(ErrorCode::InvalidSpace, "cannot compose " + outer.name + " after " + inner.name);
  return SmoothMap{outer.name + "o" + inner.name, inner.domain, outer.codomain,
                   [o = outer.apply, i = inner.apply](const CPoint& c) { return o(i(c)); }};
}

namespace {

TangentFactor left_difference(const Factor& center, const Factor& plus, const Factor& minus, double h) {
  const double c = 1.0 / (2.0 * h);
  return std::visit(
      overloaded{
          [&](const Vector&) -> TangentFactor {
            return Vector(c * (std::get<Vector>(plus) - std::get<Vector>(minus)));
          },
          [&](const Matrix& g) -> TangentFactor {
            const Matrix d = c * (std::get<Matrix>(plus) - std::get<Matrix>(minus));
            Matrix x = g.adjoint() * d;
            return Matrix(0.5 * (x - x.adjoint()));
          },
          [&](const SampledPath& p) -> TangentFactor {
            const SampledPath& pp = std::get<SampledPath>(plus);
            const SampledPath& pm = std::get<SampledPath>(minus);
            PathTangent out{p.kind, {}, {}};
            for (std::size_t k = 0; k < p.values.size(); ++k) {
              const Matrix gi = p.values[k].adjoint();
              const Matrix d = c * (pp.values[k] - pm.values[k]);
              const Matrix dd = c * (pp.derivs[k] - pm.derivs[k]);
              out.values.push_back(p.spec.project_algebra(gi * d));
              out.derivs.push_back(p.spec.project_algebra(-gi * p.derivs[k] * gi * d + gi * dd));
            }
            return out;
          },
          [&](const LoopFamily&) -> TangentFactor {
            fail(ErrorCode::InvalidInput, "finite-difference pushforward is not available for loop families");
          },
      },
      center);
}

}  // namespace

std::vector<Tangent> pushforward(const SmoothMap& map, const Point& point, const std::vector<Tangent>& tangents,
                                 PushMode mode, double h_push) {
  validate_point(map.domain, point);
  for (const Tangent& t : tangents) validate_tangent(map.domain, point, t);
  if (mode == PushMode::Analytic) return uncarry(map.apply(carry(point, tangents))).second;
  const Point center = map(point);
  std::vector<Tangent> out;
  for (const Tangent& t : tangents) {
    const Point plus = map(move(point, t, h_push));
    const Point minus = map(move(point, t, -h_push));
    Tangent pushed;
    for (std::size_t i = 0; i < center.size(); ++i)
      pushed.push_back(left_difference(center[i], plus[i], minus[i], h_push));
    out.push_back(std::move(pushed));
  }
  return out;
}

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, SmoothMap>& registry() {
  static std::map<std::string, SmoothMap> maps;
  return maps;
}

void ensure_builtin_maps() {
  static std::once_flag once;
  std::call_once(once, [] {
    for (const SmoothMap& m : builtin_maps()) registry().emplace(m.name, m);
  });
}

}  // namespace

const SmoothMap& lookup_map(const std::string& name) {
  ensure_builtin_maps();
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorCode::UnknownMap, "no map registered under '" + name + "'");
  return it->second;
}

std::vector<std::string> registered_maps() {
  ensure_builtin_maps();
  std::lock_guard<std::mutex> lock(registry_mutex());
  std::vector<std::string> names;
  for (const auto& [name, map] : registry()) names.push_back(name);
  return names;
}

void register_map(const SmoothMap& map) {
  ensure_builtin_maps();
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry().insert_or_assign(map.name, map);
}

FormEvaluator pullback(const FormEvaluator& f, const SmoothMap& map) {
  if (!(f.space == map.codomain))
    fail(ErrorCode::InvalidInput, "cannot pull back " + f.name + " on " + f.space.name + " along " + map.name +
                                      " into " + map.codomain.name);
  return FormEvaluator{map.name + "*" + f.name, map.domain, f.degree, f.kind,
                       [eval = f.eval, apply = map.apply](const Point& p, const std::vector<Tangent>& v) {
                         const auto [q, w] = uncarry(apply(carry(p, v)));
                         return eval(q, w);
                       }};
}

FormEvaluator coboundary(const FormEvaluator& f, const FaceMapTable& faces) {
  if (faces.faces.empty()) fail(ErrorCode::InvalidInput, "face table " + faces.name + " is empty");
  if (!(f.space == faces.codomain))
    fail(ErrorCode::InvalidInput, "face table " + faces.name + " does not land in " + f.space.name);
  std::vector<FormEvaluator> pulled;
  for (const SmoothMap& d : faces.faces) pulled.push_back(pullback(f, d));
  const std::string prefix = faces.direction == Direction::Horizontal ? "dh" : "dv";
  return FormEvaluator{prefix + "(" + f.name + ")", faces.domain, f.degree, f.kind,
                       [pulled](const Point& p, const std::vector<Tangent>& v) {
                         FormValue sum = pulled.front().eval(p, v);
                         for (std::size_t i = 1; i < pulled.size(); ++i) {
                           if (i % 2 == 1) {
                             sum -= pulled[i].eval(p, v);
                           } else {
                             sum += pulled[i].eval(p, v);
                           }
                         }
                         return sum;
                       }};
}

FormEvaluator exterior_derivative(const FormEvaluator& f, double h) {
  if (f.degree > 3) fail(ErrorCode::UnsupportedDegree, "exterior derivative supports degree <= 3");
  if (!(h > 0.0)) fail(ErrorCode::InvalidInput, "finite-difference step must be positive");
  const int k = f.degree;
  return FormEvaluator{"d" + f.name, f.space, k + 1, f.kind,
                       [eval = f.eval, k, h](const Point& p, const std::vector<Tangent>& v) {
                         std::optional<FormValue> acc;
                         auto add = [&acc](const FormValue& term) {
                           if (acc) {
                             *acc += term;
                           } else {
                             acc = term;
                           }
                         };
                         for (int i = 0; i <= k; ++i) {
                           std::vector<Tangent> rest;
                           for (int j = 0; j <= k; ++j)
                             if (j != i) rest.push_back(v[j]);
                           const FormValue plus = eval(move(p, v[i], h), rest);
                           const FormValue minus = eval(move(p, v[i], -h), rest);
                           const double sign = (i % 2 == 0) ? 1.0 : -1.0;
                           add((sign / (2.0 * h)) * (plus - minus));
                         }
                         for (int i = 0; i <= k; ++i) {
                           for (int j = i + 1; j <= k; ++j) {
                             std::vector<Tangent> args{bracket(v[i], v[j])};
                             for (int l = 0; l <= k; ++l)
                               if (l != i && l != j) args.push_back(v[l]);
                             const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                             add(sign * eval(p, args));
                           }
                         }
                         return (1.0 / (k + 1)) * *acc;
                       }};
}

namespace {

Space drop_fiber(const Space& s) {
  if (s.factors.empty() || s.factors.back().kind != FactorKind::Chart ||
      (s.factors.back().dim != 0 && s.factors.back().dim != 1))
    fail(ErrorCode::InvalidSpace, s.name + " has no trailing fiber coordinate");
  Space base = s;
  base.factors.pop_back();
  if (base.name.size() > 2 && base.name.compare(base.name.size() - 2, 2, "xI") == 0)
    base.name.resize(base.name.size() - 2);
  return base;
}

Tangent with_fiber_component(const Tangent& x, double tau) {
  Tangent out = x;
  out.emplace_back(Vector(Vector::Constant(1, tau)));
  return out;
}

}  // namespace

FormEvaluator fiber_integrate(const FormEvaluator& f, int n_t) {
  if (f.degree < 1) fail(ErrorCode::InvalidDegree, "fiber integration needs a form of degree >= 1");
  const Space base = drop_fiber(f.space);
  const std::vector<double> w = quadrature_weights(n_t, PathKind::Path);
  const GridSpec grid(n_t);
  const int k = f.degree;
  return FormEvaluator{"int(" + f.name + ")", base, k - 1, f.kind,
                       [eval = f.eval, w, grid, k](const Point& z, const std::vector<Tangent>& v) {
                         const Tangent zero = zero_tangent(z);
                         std::vector<Tangent> args{with_fiber_component(zero, 1.0)};
                         for (const Tangent& x : v) args.push_back(with_fiber_component(x, 0.0));
                         FormValue sum;
                         bool first = true;
                         for (int j = 0; j <= grid.N(); ++j) {
                           Point p = z;
                           p.emplace_back(Vector(Vector::Constant(1, grid.theta(j))));
                           FormValue term = w[j] * eval(p, args);
                           if (first) {
                             sum = term;
                             first = false;
                           } else {
                             sum += term;
                           }
                         }
                         return static_cast<double>(k) * sum;
                       }};
}

FormEvaluator fiber_slice(const FormEvaluator& f, double t) {
  const Space base = drop_fiber(f.space);
  return FormEvaluator{f.name + "|t", base, f.degree, f.kind,
                       [eval = f.eval, t](const Point& z, const std::vector<Tangent>& v) {
                         Point p = z;
                         p.emplace_back(Vector(Vector::Constant(1, t)));
                         std::vector<Tangent> args;
                         for (const Tangent& x : v) args.push_back(with_fiber_component(x, 0.0));
                         return eval(p, args);
                       }};
}

}  // namespace cs2g
