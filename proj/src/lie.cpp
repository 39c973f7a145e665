#include "cs2g/lie.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace cs2g {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::GridTooCoarse: return "grid-too-coarse";
    case ErrorCode::UnknownMap: return "unknown-map";
    case ErrorCode::UnsupportedDegree: return "unsupported-degree";
    case ErrorCode::InvalidDegree: return "invalid-degree";
    case ErrorCode::InvalidSpace: return "invalid-space";
    case ErrorCode::UnknownCheck: return "unknown-check";
    case ErrorCode::UnknownGroup: return "unknown-group";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// J = [[0, -I], [I, 0]] for the quaternionic structure of Sp(n).
Matrix quaternionic_j(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return j;
}

// J conj(M) J^{-1}; fixed points are the quaternionic matrices.
Matrix quaternionic_conjugate(const Matrix& m, int n) {
  const Matrix j = quaternionic_j(n);
  return j * m.conjugate() * j.adjoint();
}

Matrix polar_unitary(const Matrix& g) {
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

GroupSpec GroupSpec::su(int n) {
  if (n < 2) fail(ErrorCode::UnknownGroup, "su(n) requires n >= 2");
  return GroupSpec(Family::SU, n, -1.0 / (4.0 * kPi));
}

GroupSpec GroupSpec::so(int n) {
  if (n == 3) return GroupSpec(Family::SO, 3, -1.0 / (16.0 * kPi));
  if (n >= 5) return GroupSpec(Family::SO, n, -1.0 / (8.0 * kPi));
  fail(ErrorCode::UnknownGroup, "so(n) is supported for n = 3 and n >= 5");
}

GroupSpec GroupSpec::sp(int n) {
  if (n < 1) fail(ErrorCode::UnknownGroup, "sp(n) requires n >= 1");
  return GroupSpec(Family::Sp, n, -1.0 / (4.0 * kPi));
}

GroupSpec GroupSpec::parse(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto number = [&](std::size_t offset) {
    if (s.size() <= offset) fail(ErrorCode::UnknownGroup, "unknown group '" + name + "'");
    int n = 0;
    for (std::size_t i = offset; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        fail(ErrorCode::UnknownGroup, "unknown group '" + name + "'");
      n = 10 * n + (s[i] - '0');
      if (n > 64) fail(ErrorCode::UnknownGroup, "group rank too large in '" + name + "'");
    }
    return n;
  };
  if (s.rfind("su", 0) == 0) return su(number(2));
  if (s.rfind("so", 0) == 0) return so(number(2));
  if (s.rfind("sp", 0) == 0) return sp(number(2));
  fail(ErrorCode::UnknownGroup, "unknown group '" + name + "'");
}

int GroupSpec::algebra_dimension() const noexcept {
  switch (family_) {
    case Family::SU: return n_ * n_ - 1;
    case Family::SO: return n_ * (n_ - 1) / 2;
    case Family::Sp: return n_ * (2 * n_ + 1);
  }
  return 0;
}

std::string GroupSpec::name() const {
  switch (family_) {
    case Family::SU: return "su" + std::to_string(n_);
    case Family::SO: return "so" + std::to_string(n_);
    case Family::Sp: return "sp" + std::to_string(n_);
  }
  return "?";
}

Matrix GroupSpec::identity() const { return Matrix::Identity(matrix_size(), matrix_size()); }
Matrix GroupSpec::zero() const { return Matrix::Zero(matrix_size(), matrix_size()); }

Matrix GroupSpec::project_algebra(const Matrix& x) const {
  const int d = matrix_size();
  if (x.rows() != d || x.cols() != d) fail(ErrorCode::InvalidInput, "algebra element has wrong size for " + name());
  Matrix y = 0.5 * (x - x.adjoint());
  switch (family_) {
    case Family::SU:
      y -= (y.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
      break;
    case Family::SO:
      y = Matrix(y.real().cast<cd>());
      break;
    case Family::Sp:
      y = 0.5 * (y + quaternionic_conjugate(y, n_));
      break;
  }
  return y;
}

bool GroupSpec::in_algebra(const Matrix& x, double tol) const {
  const int d = matrix_size();
  if (x.rows() != d || x.cols() != d) return false;
  return (x - project_algebra(x)).cwiseAbs().maxCoeff() <= tol;
}

double GroupSpec::group_drift(const Matrix& g) const {
  const int d = matrix_size();
  if (g.rows() != d || g.cols() != d) return std::numeric_limits<double>::infinity();
  double drift = (g.adjoint() * g - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  switch (family_) {
    case Family::SU:
      drift = std::max(drift, std::abs(g.determinant() - cd(1.0, 0.0)));
      break;
    case Family::SO:
      drift = std::max(drift, g.imag().cwiseAbs().maxCoeff());
      drift = std::max(drift, std::abs(g.determinant() - cd(1.0, 0.0)));
      break;
    case Family::Sp:
      drift = std::max(drift, (quaternionic_conjugate(g, n_) - g).cwiseAbs().maxCoeff());
      break;
  }
  return drift;
}

bool GroupSpec::in_group(const Matrix& g, double tol) const { return group_drift(g) <= tol; }

Matrix GroupSpec::project_group(const Matrix& g) const {
  const int d = matrix_size();
  if (g.rows() != d || g.cols() != d) fail(ErrorCode::InvalidInput, "group element has wrong size for " + name());
  switch (family_) {
    case Family::SU: {
      Matrix u = polar_unitary(g);
      const cd det = u.determinant();
      return u * std::pow(det, -1.0 / d);
    }
    case Family::SO:
      return polar_unitary(Matrix(g.real().cast<cd>()));
    case Family::Sp:
      return polar_unitary(0.5 * (g + quaternionic_conjugate(g, n_)));
  }
  return g;
}

std::vector<Matrix> GroupSpec::algebra_basis() const {
  const int d = matrix_size();
  std::vector<Matrix> basis;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      for (cd unit : {cd(1.0, 0.0), cd(0.0, 1.0)}) {
        Matrix e = Matrix::Zero(d, d);
        e(j, k) = unit;
        Matrix v = project_algebra(e);
        for (const Matrix& b : basis) v -= (b.adjoint() * v).trace().real() * b;
        const double norm = std::sqrt((v.adjoint() * v).trace().real());
        if (norm > 1e-8) basis.push_back(v / norm);
      }
    }
  }
  return basis;
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    fail(ErrorCode::InvalidInput, std::string("dimension mismatch in ") + where);
}

double killing_form(const Matrix& x, const Matrix& y, const GroupSpec& spec) {
  require_same_shape(x, y, "killing_form");
  if (x.rows() != spec.matrix_size()) fail(ErrorCode::InvalidInput, "killing_form: size does not match group");
  return pairing(x, y, spec.killing_coefficient());
}

Matrix bracket(const Matrix& x, const Matrix& y) {
  require_same_shape(x, y, "bracket");
  return x * y - y * x;
}

Matrix adjoint_action(const Matrix& g, const Matrix& x) {
  require_same_shape(g, x, "adjoint_action");
  return g * x * g.adjoint();
}

Matrix adjoint_action_inverse(const Matrix& g, const Matrix& x) {
  require_same_shape(g, x, "adjoint_action_inverse");
  return g.adjoint() * x * g;
}

Matrix exp_algebra(const Matrix& x, const GroupSpec& spec) {
  Matrix g = x.exp();
  if (spec.group_drift(g) > 1e-9) g = spec.project_group(g);
  return g;
}

ExpJet exp_jet(const Matrix& x, const Matrix& dx) {
  require_same_shape(x, dx, "exp_jet");
  const Eigen::Index d = x.rows();
  Matrix block = Matrix::Zero(2 * d, 2 * d);
  block.topLeftCorner(d, d) = x;
  block.topRightCorner(d, d) = dx;
  block.bottomRightCorner(d, d) = x;
  const Matrix e = block.exp();
  return {e.topLeftCorner(d, d), e.topRightCorner(d, d)};
}

Matrix random_algebra(const GroupSpec& spec, Rng& rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = spec.matrix_size();
  Matrix x(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      x(j, k) = cd(re, im);
    }
  return scale * spec.project_algebra(x);
}

Matrix random_group(const GroupSpec& spec, Rng& rng, double scale) {
  return exp_algebra(random_algebra(spec, rng, scale), spec);
}

}  // namespace cs2g
