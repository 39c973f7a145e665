#include "cs2g/faces.hpp"

#include <map>
#include <mutex>

namespace cs2g {

namespace {

using prim::ev;
using prim::inverse;
using prim::mult;

CFactor conj(const CFactor& q, const CFactor& gamma) { return prim::conj_inverse(q, gamma); }

SmoothMap make(std::string name, Space domain, Space codomain, std::function<CPoint(const CPoint&)> apply) {
  return SmoothMap{std::move(name), std::move(domain), std::move(codomain), std::move(apply)};
}

FaceMapTable table(std::string name, Direction dir, Space domain, Space codomain,
                   std::vector<std::function<CPoint(const CPoint&)>> faces) {
  FaceMapTable t{name, dir, domain, codomain, {}};
  for (std::size_t i = 0; i < faces.size(); ++i)
    t.faces.push_back(make(name + ".d" + std::to_string(i), domain, codomain, faces[i]));
  return t;
}

// Nerve of a group (or of OG): (g_1..g_n) faces.
std::vector<std::function<CPoint(const CPoint&)>> nerve_faces(int n, int offset) {
  std::vector<std::function<CPoint(const CPoint&)>> faces;
  for (int i = 0; i <= n; ++i) {
    faces.push_back([i, n, offset](const CPoint& c) {
      CPoint out(c.begin(), c.begin() + offset);
      for (int j = 0; j < n; ++j) {
        const CFactor& g = c[offset + j];
        if (i == 0 && j == 0) continue;
        if (i == n && j == n - 1) continue;
        if (j == i - 1) {
          out.push_back(mult(g, c[offset + j + 1]));
          ++j;
          continue;
        }
        out.push_back(g);
      }
      return out;
    });
  }
  return faces;
}

// Q x G^n with the action on the Q factor for d0.
std::vector<std::function<CPoint(const CPoint&)>> action_nerve_faces(int n, bool paths) {
  std::vector<std::function<CPoint(const CPoint&)>> faces = nerve_faces(n, 2);
  faces[0] = [n, paths](const CPoint& c) {
    CPoint out{c[0], mult(c[1], paths ? ev(c[2]) : c[2])};
    for (int j = 1; j < n; ++j) out.push_back(c[2 + j]);
    return out;
  };
  return faces;
}

// PG x OG^k and Q x PG x OG^k vertical faces; offset is the index of p.
// (p, gamma_1..gamma_k) -> d_i multiplies neighbours i, i+1; d_k drops gamma_k.
std::vector<std::function<CPoint(const CPoint&)>> gerbe_faces(int k, int offset) {
  auto faces = nerve_faces(k + 1, offset);
  faces.erase(faces.begin());
  return faces;
}

std::map<std::string, FaceMapTable> build_tables() {
  std::map<std::string, FaceMapTable> t;
  auto add = [&t](FaceMapTable table) { t.emplace(table.name, std::move(table)); };
  using namespace spaces;
  add(table("nerve_G.2", Direction::Horizontal, G2(), G(), nerve_faces(2, 0)));
  add(table("nerve_G.3", Direction::Horizontal, G3(), G2(), nerve_faces(3, 0)));
  add(table("nerve_OG.2", Direction::Vertical, OG2(), OG(), nerve_faces(2, 0)));
  add(table("nerve_OG.3", Direction::Vertical, OG3(), OG2(), nerve_faces(3, 0)));
  add(table("gerbe.1", Direction::Vertical, PGxOG(), PG(), gerbe_faces(1, 0)));
  add(table("gerbe.2", Direction::Vertical, PGxOG2(), PGxOG(), gerbe_faces(2, 0)));
  add(table("gerbe.3", Direction::Vertical, PGxOG3(), PGxOG2(), gerbe_faces(3, 0)));
  add(table("QG.1", Direction::Horizontal, QxG(), Q(), action_nerve_faces(1, false)));
  add(table("QG.2", Direction::Horizontal, QxG2(), QxG(), action_nerve_faces(2, false)));
  add(table("QG.3", Direction::Horizontal, QxG3(), QxG2(), action_nerve_faces(3, false)));
  add(table("QPG.1", Direction::Horizontal, QxPG(), Q(), action_nerve_faces(1, true)));
  add(table("QPG.2", Direction::Horizontal, QxPG2(), QxPG(), action_nerve_faces(2, true)));
  add(table("QPG.3", Direction::Horizontal, QxPG3(), QxPG2(), action_nerve_faces(3, true)));
  add(table("QPG_v.1", Direction::Vertical, QxPGxOG(), QxPG(), gerbe_faces(1, 2)));
  add(table("QPG_v.2", Direction::Vertical, QxPGxOG2(), QxPGxOG(), gerbe_faces(2, 2)));
  // (x, g, p, gamma, q, eta)
  add(table("semi_h.2", Direction::Horizontal, QxSemi2(), QxPGxOG(),
            {
                [](const CPoint& c) { return CPoint{c[0], mult(c[1], ev(c[2])), c[4], c[5]}; },
                [](const CPoint& c) { return CPoint{c[0], c[1], mult(c[2], c[4]), mult(conj(c[4], c[3]), c[5])}; },
                [](const CPoint& c) { return CPoint{c[0], c[1], c[2], c[3]}; },
            }));
  add(table("semi_v.2", Direction::Vertical, QxSemi2(), QxPG2(),
            {
                [](const CPoint& c) { return CPoint{c[0], c[1], mult(c[2], c[3]), mult(c[4], c[5])}; },
                [](const CPoint& c) { return CPoint{c[0], c[1], c[2], c[4]}; },
            }));
  // (x, g, p, gamma1, gamma2, q, eta1, eta2)
  add(table("semi2_h.2", Direction::Horizontal, QxSemi2x2(), QxPGxOG2(),
            {
                [](const CPoint& c) { return CPoint{c[0], mult(c[1], ev(c[2])), c[5], c[6], c[7]}; },
                [](const CPoint& c) {
                  const CFactor first = mult(conj(c[5], c[3]), c[6]);
                  const CFactor second = mult(mult(mult(inverse(c[6]), conj(c[5], c[4])), c[6]), c[7]);
                  return CPoint{c[0], c[1], mult(c[2], c[5]), first, second};
                },
                [](const CPoint& c) { return CPoint{c[0], c[1], c[2], c[3], c[4]}; },
            }));
  add(table("semi2_v.2", Direction::Vertical, QxSemi2x2(), QxSemi2(),
            {
                [](const CPoint& c) { return CPoint{c[0], c[1], mult(c[2], c[3]), c[4], mult(c[5], c[6]), c[7]}; },
                [](const CPoint& c) { return CPoint{c[0], c[1], c[2], mult(c[3], c[4]), c[5], mult(c[6], c[7])}; },
                [](const CPoint& c) { return CPoint{c[0], c[1], c[2], c[3], c[5], c[6]}; },
            }));
  return t;
}

const std::map<std::string, FaceMapTable>& tables() {
  static const std::map<std::string, FaceMapTable> t = build_tables();
  return t;
}

}  // namespace

const FaceMapTable& face_table(const std::string& name) {
  auto it = tables().find(name);
  if (it == tables().end()) fail(ErrorCode::UnknownMap, "no face table named '" + name + "'");
  return it->second;
}

std::vector<std::string> face_table_names() {
  std::vector<std::string> names;
  for (const auto& [name, t] : tables()) names.push_back(name);
  return names;
}

std::vector<SimplicialPair> simplicial_pairs() {
  using K = SimplicialPair::Kind;
  return {
      {K::Simplicial, "nerve_G.3", "nerve_G.2", "", ""},
      {K::Simplicial, "nerve_OG.3", "nerve_OG.2", "", ""},
      {K::Simplicial, "gerbe.2", "gerbe.1", "", ""},
      {K::Simplicial, "gerbe.3", "gerbe.2", "", ""},
      {K::Simplicial, "QG.2", "QG.1", "", ""},
      {K::Simplicial, "QG.3", "QG.2", "", ""},
      {K::Simplicial, "QPG.2", "QPG.1", "", ""},
      {K::Simplicial, "QPG.3", "QPG.2", "", ""},
      {K::Simplicial, "QPG_v.2", "QPG_v.1", "", ""},
      {K::Simplicial, "semi2_v.2", "semi_v.2", "", ""},
      {K::Commuting, "semi_h.2", "QPG_v.1", "semi_v.2", "QPG.2"},
      {K::Commuting, "semi2_h.2", "QPG_v.2", "semi2_v.2", "semi_h.2"},
  };
}

SmoothMap projection(const Space& domain, const Space& codomain, std::vector<int> factors, std::string name) {
  if (factors.size() != codomain.arity()) fail(ErrorCode::InvalidSpace, "projection arity mismatch");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int j = factors[i];
    if (j < 0 || j >= static_cast<int>(domain.arity())) fail(ErrorCode::InvalidSpace, "projection index out of range");
    Space a{"", {domain.factors[j]}}, b{"", {codomain.factors[i]}};
    const bool loop_as_path = domain.factors[j].kind == FactorKind::Loop && codomain.factors[i].kind == FactorKind::Path;
    if (!(a == b) && !loop_as_path) fail(ErrorCode::InvalidSpace, "projection factor kind mismatch in " + name);
  }
  return make(std::move(name), domain, codomain, [factors](const CPoint& c) {
    CPoint out;
    for (int j : factors) out.push_back(c[j]);
    return out;
  });
}

SmoothMap endpoint_map(int n_paths, int m) {
  Space domain = spaces::Q(m), codomain = spaces::Q(m);
  for (int i = 0; i < n_paths; ++i) {
    domain.factors.push_back({FactorKind::Path, 0});
    codomain.factors.push_back({FactorKind::Group, 0});
  }
  domain.name = "QxPG^" + std::to_string(n_paths);
  codomain.name = "QxG^" + std::to_string(n_paths);
  return make("pi." + std::to_string(n_paths), domain, codomain, [](const CPoint& c) {
    CPoint out{c[0], c[1]};
    for (std::size_t i = 2; i < c.size(); ++i) out.push_back(ev(c[i]));
    return out;
  });
}

SmoothMap family_evaluation() {
  return make("id_x_ev", spaces::PGxPOGxI(), spaces::PGxOG(),
              [](const CPoint& c) { return CPoint{c[0], prim::family_ev(c[1], c[2])}; });
}

SmoothMap path_loop_action() {
  return make("PG.act", spaces::PGxOG(), spaces::PG(), [](const CPoint& c) { return CPoint{mult(c[0], c[1])}; });
}

SmoothMap loop_adjoint_map() {
  return make("Ad", Space{"PGxOG", {{FactorKind::Path, 0}, {FactorKind::Loop, 0}}}, spaces::OG(), [](const CPoint& c) {
    return CPoint{conj(inverse(c[0]), c[1])};
  });
}

SmoothMap semidirect_multiplication() {
  Space domain{"(PGxOG)^2", {{FactorKind::Path, 0}, {FactorKind::Loop, 0}, {FactorKind::Path, 0}, {FactorKind::Loop, 0}}};
  return make("semidirect.mult", domain, spaces::PGxOG(), [](const CPoint& c) {
    return CPoint{mult(c[0], c[2]), mult(conj(c[2], c[1]), c[3])};
  });
}

std::vector<SmoothMap> builtin_maps() {
  using namespace spaces;
  std::vector<SmoothMap> maps{
      make("G.mult", G2(), G(), [](const CPoint& c) { return CPoint{mult(c[0], c[1])}; }),
      make("G.inverse", G(), G(), [](const CPoint& c) { return CPoint{inverse(c[0])}; }),
      make("PG.mult", PG2(), PG(), [](const CPoint& c) { return CPoint{mult(c[0], c[1])}; }),
      make("PG.inverse", PG(), PG(), [](const CPoint& c) { return CPoint{inverse(c[0])}; }),
      make("OG.mult", OG2(), OG(), [](const CPoint& c) { return CPoint{mult(c[0], c[1])}; }),
      make("OG.inverse", OG(), OG(), [](const CPoint& c) { return CPoint{inverse(c[0])}; }),
      make("ev2pi", PG(), G(), [](const CPoint& c) { return CPoint{ev(c[0])}; }),
      make("id.G", G(), G(), [](const CPoint& c) { return c; }),
      path_loop_action(),
      loop_adjoint_map(),
      semidirect_multiplication(),
      family_evaluation(),
  };
  for (const std::string& name : face_table_names())
    for (const SmoothMap& d : face_table(name).faces) maps.push_back(d);
  return maps;
}

}  // namespace cs2g
