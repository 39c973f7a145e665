#pragma once

// Named forms on the loop group, the path fibration and the group itself.
//
// Every theta-integral uses the path quadrature rule, so identities whose
// integrands cancel pointwise also cancel after quadrature.

#include <string>
#include <vector>

#include "cs2g/forms.hpp"

namespace cs2g {

constexpr PathKind kFormQuadrature = PathKind::Path;

// Integral over [0, 2 pi] of <X, Y> with the form quadrature rule.
double theta_integral(const std::vector<Matrix>& x, const std::vector<Matrix>& y, const GroupSpec& spec);

FormEvaluator form_theta(const GroupSpec& spec);      // G, 1, algebra
FormEvaluator form_theta_hat(const GroupSpec& spec);  // G, 1, algebra
FormEvaluator form_R(const GroupSpec& spec);          // OG, 2
FormEvaluator form_nu(const GroupSpec& spec);         // OG^2, 1
FormEvaluator form_epsilon(const GroupSpec& spec);    // PG x OG, 1
FormEvaluator form_B(const GroupSpec& spec);          // PG, 2
FormEvaluator form_omega(const GroupSpec& spec);      // G, 3
FormEvaluator form_kappa(const GroupSpec& spec);      // G^2, 2
FormEvaluator form_rho(const GroupSpec& spec);        // PG x OG, 1
FormEvaluator form_epsilon_MS(const GroupSpec& spec); // PG, 1

// R evaluated as the single integral of <X, dY>, without antisymmetrization.
double R_naive(const SampledLoop& gamma, const PathTangent& x, const PathTangent& y);

struct AdjointPhase {
  double double_integral = 0.0;  // 2 int int <f^{-1} d_t f, phi_p> on the sampled grid
  double fiber_integral = 0.0;   // integral over the fiber of (id x ev)^* rho
};
// Both formulas for the phase of the lifted adjoint action at (p, f).
AdjointPhase adjoint_phase(const SampledPath& p, const LoopFamily& f, int n_t);
double adjoint_phase_grid(const SampledPath& p, const LoopOfLoops& f);

enum class EntryStatus { Housed, Function, DescendedOnly };

struct CatalogEntry {
  std::string name;
  std::string symbol;
  std::string space;
  int degree = 0;
  std::string value_kind;
  EntryStatus status = EntryStatus::Housed;
  std::string location;  // where the form lives in this library
  std::string description;
  bool table_row = true;
};

std::vector<CatalogEntry> catalog();
std::string catalog_json(int indent = 2);
std::vector<CatalogEntry> catalog_from_json(const std::string& text);
const char* to_string(EntryStatus status) noexcept;

}  // namespace cs2g
