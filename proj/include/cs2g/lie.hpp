#pragma once

// Compact matrix Lie groups SU(n), SO(n), Sp(n) and their algebras.
//
// Every element is stored as a dense complex matrix. SO(n) uses real entries
// (imaginary parts are kept at zero); Sp(n) is stored through its 2n x 2n
// complex embedding, where a quaternion a + b j maps to [[a, -conj(b)], [b, conj(a)]].

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cs2g/error.hpp"

namespace cs2g {

using Matrix = Eigen::MatrixXcd;
using AlgebraElement = Matrix;
using GroupElement = Matrix;

using Rng = std::mt19937_64;

enum class Family { SU, SO, Sp };

class GroupSpec {
 public:
  static GroupSpec su(int n);
  static GroupSpec so(int n);
  static GroupSpec sp(int n);
  // Accepts "su2", "su3", "so3", "so5", "sp1", ... (case-insensitive).
  static GroupSpec parse(const std::string& name);

  Family family() const noexcept { return family_; }
  int rank_parameter() const noexcept { return n_; }
  int matrix_size() const noexcept { return family_ == Family::Sp ? 2 * n_ : n_; }
  // The scalar c with <X,Y> = c * Re tr(XY) (reduced trace for Sp).
  double killing_coefficient() const noexcept { return killing_coefficient_; }
  int algebra_dimension() const noexcept;
  std::string name() const;

  Matrix identity() const;
  Matrix zero() const;

  bool in_algebra(const Matrix& x, double tol = 1e-12) const;
  bool in_group(const Matrix& g, double tol = 1e-10) const;
  Matrix project_algebra(const Matrix& x) const;
  // Nearest group element (polar decomposition plus the family's extra
  // constraints).
  Matrix project_group(const Matrix& g) const;
  // || g^* g - 1 ||_max, plus the quaternionic / reality residual.
  double group_drift(const Matrix& g) const;

  // An orthonormal-ish real basis of the algebra (used by tests and demos).
  std::vector<Matrix> algebra_basis() const;

  bool operator==(const GroupSpec& other) const noexcept {
    return family_ == other.family_ && n_ == other.n_;
  }

 private:
  GroupSpec(Family family, int n, double coefficient)
      : family_(family), n_(n), killing_coefficient_(coefficient) {}

  Family family_;
  int n_;
  double killing_coefficient_;
};

void require_same_shape(const Matrix& a, const Matrix& b, const char* where);

// Normalized invariant pairing: c * Re tr(XY).
double killing_form(const Matrix& x, const Matrix& y, const GroupSpec& spec);
// Same pairing without the dimension check, for inner loops.
inline double pairing(const Matrix& x, const Matrix& y, double coefficient) {
  return coefficient * (x.cwiseProduct(y.transpose())).sum().real();
}

Matrix bracket(const Matrix& x, const Matrix& y);
// g X g^{-1}; g is unitary so g^{-1} = g^*.
Matrix adjoint_action(const Matrix& g, const Matrix& x);
// g^{-1} X g.
Matrix adjoint_action_inverse(const Matrix& g, const Matrix& x);

// Matrix exponential, re-projected onto the group when drift exceeds 1e-9.
Matrix exp_algebra(const Matrix& x, const GroupSpec& spec);

// exp(X(theta)) together with its theta-derivative given dX/dtheta, from the
// block exponential exp([[X, dX], [0, X]]).
struct ExpJet {
  Matrix value;
  Matrix derivative;
};
ExpJet exp_jet(const Matrix& x, const Matrix& dx);

// Left Maurer-Cartan form on the tangent g X (left representation): X.
inline Matrix maurer_cartan_left(const Matrix& /*g*/, const Matrix& x) { return x; }
// Right Maurer-Cartan form on the tangent g X: Ad_g X.
inline Matrix maurer_cartan_right(const Matrix& g, const Matrix& x) {
  return adjoint_action(g, x);
}

// Entrywise Gaussian matrix projected to the algebra, times scale.
Matrix random_algebra(const GroupSpec& spec, Rng& rng, double scale = 1.0);
Matrix random_group(const GroupSpec& spec, Rng& rng, double scale = 1.0);

}  // namespace cs2g
