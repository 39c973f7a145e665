#include "cs2g/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "check_support.hpp"

namespace cs2g {

void CheckParams::validate() const {
  GroupSpec::parse(group);
  if (N < 16) fail(ErrorCode::GridTooCoarse, "N must be at least 16");
  if (N % 2 != 0) fail(ErrorCode::InvalidInput, "N must be even");
  if (!(h >= 1e-7 && h <= 1e-2)) fail(ErrorCode::InvalidInput, "h must lie in [1e-7, 1e-2]");
  if (points < 1 || tangent_sets < 1) fail(ErrorCode::InvalidInput, "sample counts must be positive");
  if (chart_dim < 1 || chart_dim > 8) fail(ErrorCode::InvalidInput, "chart dimension must lie in [1, 8]");
  for (const auto& [name, tol] : tolerance_overrides) {
    find_check(name);
    if (!(tol > 0.0)) fail(ErrorCode::InvalidInput, "tolerance override for " + name + " must be positive");
  }
}

void CheckReport::finalize() {
  samples = 0;
  pass = !subresults.empty();
  double worst = -1.0;
  for (const SubResult& s : subresults) {
    samples += s.samples;
    pass = pass && s.pass;
    const double ratio = s.max_rel_err / s.tolerance;
    if (ratio > worst) {
      worst = ratio;
      max_abs_err = s.max_abs_err;
      max_rel_err = s.max_rel_err;
      tolerance = s.tolerance;
    }
  }
}

namespace detail {

void Accumulator::add(const FormValue& lhs, const FormValue& rhs, double scale_hint) {
  ++samples_;
  max_abs_ = std::max(max_abs_, distance(lhs, rhs));
  max_scale_ = std::max({max_scale_, lhs.magnitude(), rhs.magnitude(), scale_hint});
}

SubResult Accumulator::result() const {
  SubResult r;
  r.name = name_;
  r.samples = samples_;
  r.max_abs_err = max_abs_;
  r.max_rel_err = max_scale_ >= 1e-12 ? max_abs_ / max_scale_ : max_abs_;
  r.tolerance = tolerance_;
  r.pass = samples_ > 0 && r.max_rel_err <= tolerance_;
  return r;
}

void OrderTracker::add(const FormValue& d1, const FormValue& d2, const FormValue& d4, double h) {
  const double a = distance(d2, d1);
  const double b = distance(d4, d2);
  const double scale = std::max({d1.magnitude(), d2.magnitude(), d4.magnitude()});
  const double noise = scale * (1e-10 + 4e-15 / h);
  ++seen_;
  if (a > noise && b > noise) {
    orders_.push_back(std::log2(b / a));
    ++measured_;
  } else if (b > noise) {
    noisy_ = true;
  }
}

std::optional<double> OrderTracker::order() const {
  if (orders_.empty()) return std::nullopt;
  std::vector<double> sorted = orders_;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

FdForm::FdForm(const FormEvaluator& f, double h)
    : d1_(exterior_derivative(f, h)), d2_(exterior_derivative(f, 2 * h)), d4_(exterior_derivative(f, 4 * h)), h_(h) {}

FormValue FdForm::operator()(const Point& p, const std::vector<Tangent>& v, OrderTracker* order) const {
  const FormValue value = d1_(p, v);
  if (order) order->add(value, d2_(p, v), d4_(p, v), h_);
  return value;
}

Context::Context(const CheckParams& p, Rng& r, std::string name, double tol)
    : params(p), spec(GroupSpec::parse(p.group)), rng(r), check(std::move(name)), default_tolerance(tol) {}

double Context::tol(double fallback) const {
  auto it = params.tolerance_overrides.find(check);
  return it == params.tolerance_overrides.end() ? fallback : it->second;
}

Point Context::point(const Space& space, int n) { return random_point(space, spec, n > 0 ? n : params.N, rng); }

Point Context::point_with(const Space& space, int n, const GroupSpec& group) {
  return random_point(space, group, n > 0 ? n : params.N, rng);
}

std::vector<Tangent> Context::tangents(const Space& space, const Point& p, int k) {
  std::vector<Tangent> out;
  for (int i = 0; i < k; ++i) out.push_back(random_tangent(space, p, spec, rng));
  return out;
}

BundleModel Context::bundle(int m) {
  BundleModel b = BundleModel::random(spec, m, rng);
  b.set_seed(params.seed);
  return b;
}

CheckReport Context::report(std::vector<SubResult> subresults, const OrderTracker* order, std::string note) const {
  CheckReport r;
  r.check = check;
  r.group = spec.name();
  r.N = params.N;
  r.h = params.h;
  r.seed = params.seed;
  r.subresults = std::move(subresults);
  r.note = std::move(note);
  if (order) {
    r.uses_fd = true;
    r.observed_order = order->order();
    r.fd_exact = order->exact();
  }
  r.finalize();
  return r;
}

std::vector<FormEvaluator> coboundary_terms(const FormEvaluator& f, const FaceMapTable& faces) {
  std::vector<FormEvaluator> out;
  for (std::size_t i = 0; i < faces.faces.size(); ++i) {
    FormEvaluator t = pullback(f, faces.faces[i]);
    out.push_back(i % 2 == 0 ? t : -1.0 * t);
  }
  return out;
}

std::vector<FormEvaluator> expand_twice(const FormEvaluator& f, const FaceMapTable& inner, const FaceMapTable& outer) {
  std::vector<FormEvaluator> out;
  for (const FormEvaluator& a : coboundary_terms(f, inner))
    for (const FormEvaluator& b : coboundary_terms(a, outer)) out.push_back(b);
  return out;
}

Expanded evaluate_terms(const std::vector<FormEvaluator>& terms, const Point& p, const std::vector<Tangent>& v) {
  Expanded e;
  bool first = true;
  for (const FormEvaluator& t : terms) {
    const FormValue value = t(p, v);
    e.scale = std::max(e.scale, value.magnitude());
    if (first) {
      e.value = value;
      first = false;
    } else {
      e.value += value;
    }
  }
  return e;
}

namespace {

double matrix_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

double grid_distance(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, matrix_distance(a[k], b[k]));
  return d;
}

}  // namespace

double point_distance(const Point& a, const Point& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index() != b[i].index()) return INFINITY;
    if (const Vector* x = std::get_if<Vector>(&a[i])) {
      d = std::max(d, (*x - std::get<Vector>(b[i])).cwiseAbs().maxCoeff());
    } else if (const Matrix* g = std::get_if<Matrix>(&a[i])) {
      d = std::max(d, matrix_distance(*g, std::get<Matrix>(b[i])));
    } else if (const SampledPath* p = std::get_if<SampledPath>(&a[i])) {
      const SampledPath& q = std::get<SampledPath>(b[i]);
      d = std::max({d, grid_distance(p->values, q.values), grid_distance(p->derivs, q.derivs)});
    } else {
      fail(ErrorCode::InvalidInput, "point_distance: loop families are not compared");
    }
  }
  return d;
}

double tangent_distance(const Tangent& a, const Tangent& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index() != b[i].index()) return INFINITY;
    if (const Vector* x = std::get_if<Vector>(&a[i])) {
      d = std::max(d, (*x - std::get<Vector>(b[i])).cwiseAbs().maxCoeff());
    } else if (const Matrix* g = std::get_if<Matrix>(&a[i])) {
      d = std::max(d, matrix_distance(*g, std::get<Matrix>(b[i])));
    } else if (const PathTangent* p = std::get_if<PathTangent>(&a[i])) {
      const PathTangent& q = std::get<PathTangent>(b[i]);
      d = std::max({d, grid_distance(p->values, q.values), grid_distance(p->derivs, q.derivs)});
    } else {
      fail(ErrorCode::InvalidInput, "tangent_distance: loop-family tangents are not compared");
    }
  }
  return d;
}

}  // namespace detail

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> checks = [] {
    std::vector<CheckInfo> all = detail::basic_checks();
    for (CheckInfo& c : detail::cs_checks()) all.push_back(std::move(c));
    std::sort(all.begin(), all.end(), [](const CheckInfo& a, const CheckInfo& b) { return a.name < b.name; });
    return all;
  }();
  return checks;
}

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const CheckInfo& c : check_registry()) names.push_back(c.name);
  return names;
}

const CheckInfo& find_check(const std::string& name) {
  for (const CheckInfo& c : check_registry())
    if (c.name == name) return c;
  fail(ErrorCode::UnknownCheck, "unknown check '" + name + "'");
}

Rng check_rng(std::uint64_t seed, const std::string& name) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : name) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(hash), static_cast<std::uint32_t>(hash >> 32)};
  return Rng(seq);
}

CheckReport run_check(const std::string& name, const CheckParams& params) {
  params.validate();
  const CheckInfo& info = find_check(name);
  Rng rng = check_rng(params.seed, name);
  const auto start = std::chrono::steady_clock::now();
  CheckReport r = info.run(params, rng);
  const auto stop = std::chrono::steady_clock::now();
  r.check = info.name;
  r.category = info.category;
  r.seed = params.seed;
  r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

std::vector<CheckReport> run_checks(const std::vector<std::string>& names, const CheckParams& params) {
  params.validate();
  std::vector<std::string> sorted = names;
  for (const std::string& n : sorted) find_check(n);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<CheckReport> out(sorted.size());
  std::vector<std::exception_ptr> errors(sorted.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sorted.size(); i = next++) {
      try {
        out[i] = run_check(sorted[i], params);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(sorted.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<CheckReport> run_all(const CheckParams& params) { return run_checks(check_names(), params); }

}  // namespace cs2g
