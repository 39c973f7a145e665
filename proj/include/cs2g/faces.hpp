#pragma once

// Face maps of the simplicial and bisimplicial spaces used by the gerbe
// constructions.
//
// Points of Q = X x G are (x, g); the right action is (x, g) h = (x, g h).
// Semidirect products PG x| OG are stored as consecutive (p, gamma) factors.

#include <string>
#include <vector>

#include "cs2g/forms.hpp"

namespace cs2g {

// Primitive group maps and the face maps of every table, by name.
std::vector<SmoothMap> builtin_maps();

// Tables by name:
//   nerve_G.2, nerve_G.3         G^n -> G^{n-1}
//   nerve_OG.2, nerve_OG.3       OG^n -> OG^{n-1}
//   gerbe.1, gerbe.2, gerbe.3    PG x OG^n -> PG x OG^{n-1}
//   QG.1, QG.2, QG.3             Q x G^n -> Q x G^{n-1}
//   QPG.1, QPG.2, QPG.3          Q x PG^n -> Q x PG^{n-1}          (horizontal)
//   QPG_v.1, QPG_v.2             Q x PG x OG^k -> Q x PG x OG^{k-1} (vertical)
//   semi_h.2                     Q x (PG x| OG)^2 -> Q x PG x OG    (horizontal)
//   semi_v.2                     Q x (PG x| OG)^2 -> Q x PG^2       (vertical)
//   semi2_h.2                    Q x (PG x| OG^2)^2 -> Q x PG x OG^2 (horizontal, starred d1)
//   semi2_v.2                    Q x (PG x| OG^2)^2 -> Q x (PG x| OG)^2 (vertical)
const FaceMapTable& face_table(const std::string& name);
std::vector<std::string> face_table_names();

// A pair of composable tables together with the identity they must satisfy.
//   Simplicial: lower.d_i o upper.d_j = lower.d_{j-1} o upper.d_i for i < j.
//   Commuting:  second_v.d_j o first_h.d_i = second_h.d_i o first_v.d_j.
struct SimplicialPair {
  enum class Kind { Simplicial, Commuting } kind;
  std::string upper;
  std::string lower;
  std::string upper_other;  // commuting pairs only
  std::string lower_other;  // commuting pairs only
};
std::vector<SimplicialPair> simplicial_pairs();

// Standard maps used to move forms between spaces.
SmoothMap projection(const Space& domain, const Space& codomain, std::vector<int> factors, std::string name);
// (x, g, p_1..p_n) -> (x, g, p_1(2 pi)..p_n(2 pi)).
SmoothMap endpoint_map(int n_paths, int m = 0);
// (p, f, t) -> (p, f(t)).
SmoothMap family_evaluation();
// (p, gamma) -> p gamma, (q, gamma) -> q gamma q^{-1} and the semidirect product.
SmoothMap path_loop_action();
SmoothMap loop_adjoint_map();
SmoothMap semidirect_multiplication();

}  // namespace cs2g
