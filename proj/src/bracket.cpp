#include "bondforge/bracket.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace bondforge {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x), y = find(y);
    if (x == y) return false;
    p[y] = x;
    return true;
  }
};

// Crossing list with arcs renumbered densely by first appearance.
using Key = std::vector<std::int32_t>;

Key canonical_key(const std::vector<PdCode::Crossing>& cs) {
  Key key;
  key.reserve(cs.size() * 5);
  std::unordered_map<int, int> rename;
  for (const auto& c : cs) {
    for (int a : c.arc) {
      auto [it, fresh] = rename.try_emplace(a, static_cast<int>(rename.size()));
      (void)fresh;
      key.push_back(it->second);
    }
    key.push_back(c.over02 ? 1 : 0);
  }
  return key;
}

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

// Slot pairs joined by the A- and B-smoothings of a crossing.
std::array<std::array<int, 2>, 2> smoothing_pairs(bool over02, bool a_smoothing) {
  bool horizontal = over02 == a_smoothing;
  if (horizontal) return {{{1, 2}, {3, 0}}};
  return {{{0, 1}, {2, 3}}};
}

class BracketEngine {
 public:
  // Sum over states of A^(#A - #B) d^(closed loops).
  LaurentPoly eval(std::vector<PdCode::Crossing> cs) {
    if (cs.empty()) return LaurentPoly(1);
    Key key = canonical_key(cs);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    PdCode::Crossing c = cs.back();
    cs.pop_back();
    LaurentPoly total;
    for (bool a_side : {true, false}) {
      auto rest = cs;
      int loops = 0;
      auto arcs = c.arc;
      for (auto [i, j] : smoothing_pairs(c.over02, a_side)) {
        int x = arcs[i], y = arcs[j];
        if (x == y) {
          ++loops;
          continue;
        }
        for (auto& r : rest)
          for (int& a : r.arc)
            if (a == y) a = x;
        for (int& a : arcs)
          if (a == y) a = x;
      }
      LaurentPoly term = eval(std::move(rest));
      term *= pow(d_loop(), loops);
      total += term.shifted_A(a_side ? 1 : -1);
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

 private:
  std::unordered_map<Key, LaurentPoly, KeyHash> memo_;
};

// Turns a state total into the normalized bracket.
LaurentPoly normalize(const LaurentPoly& total, bool empty) {
  if (empty) return LaurentPoly(1);
  return divide_exact(total, d_loop());
}

}  // namespace

PdCode to_pd(const BondedDiagram& d) {
  if (!d.is_classical()) throw DiagramError("not classical");
  PdCode pd;
  pd.free_loops = d.free_loops;
  for (const Vertex& v : d.vertices) {
    PdCode::Crossing c;
    c.over02 = v.over02;
    for (int s = 0; s < 4; ++s) {
      c.arc[s] = v.slots[s].edge;
      c.outgoing[s] = v.slots[s].end == 0;
    }
    pd.crossings.push_back(c);
  }
  return pd;
}

int pd_crossing_sign(const PdCode::Crossing& c) {
  int over_exit = -1, under_exit = -1;
  for (int s = 0; s < 4; ++s) {
    if (!c.outgoing[s]) continue;
    bool over = (s % 2 == 0) == c.over02;
    (over ? over_exit : under_exit) = s;
  }
  if (over_exit < 0 || under_exit < 0) throw DiagramError("crossing without consistent orientation");
  return under_exit == (over_exit + 1) % 4 ? 1 : -1;
}

int pd_writhe(const PdCode& pd) {
  int w = 0;
  for (const auto& c : pd.crossings) w += pd_crossing_sign(c);
  return w;
}

int pd_component_count(const PdCode& pd) {
  std::map<int, int> idx;
  for (const auto& c : pd.crossings)
    for (int a : c.arc) idx.try_emplace(a, static_cast<int>(idx.size()));
  Dsu dsu(static_cast<int>(idx.size()));
  int comps = static_cast<int>(idx.size());
  for (const auto& c : pd.crossings)
    for (int s = 0; s < 2; ++s) comps -= dsu.unite(idx[c.arc[s]], idx[c.arc[s + 2]]);
  return comps + pd.free_loops;
}

LaurentPoly bracket(const PdCode& pd) {
  BracketEngine engine;
  LaurentPoly total = engine.eval(pd.crossings) * pow(d_loop(), pd.free_loops);
  return normalize(total, pd.crossings.empty() && pd.free_loops == 0);
}

LaurentPoly bracket_state_sum(const PdCode& pd) {
  std::size_t n = pd.crossings.size();
  if (n > 24) throw DiagramError("too many crossings for state enumeration");
  std::map<int, int> idx;
  for (const auto& c : pd.crossings)
    for (int a : c.arc) idx.try_emplace(a, static_cast<int>(idx.size()));
  LaurentPoly total;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Dsu dsu(static_cast<int>(idx.size()));
    int exponent = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& c = pd.crossings[k];
      bool a_side = !(mask >> k & 1u);
      exponent += a_side ? 1 : -1;
      for (auto [i, j] : smoothing_pairs(c.over02, a_side)) dsu.unite(idx[c.arc[i]], idx[c.arc[j]]);
    }
    int loops = pd.free_loops;
    for (int i = 0; i < static_cast<int>(idx.size()); ++i) loops += dsu.find(i) == i;
    total += pow(d_loop(), loops).shifted_A(exponent);
  }
  return normalize(total, n == 0 && pd.free_loops == 0);
}

LaurentPoly kauffman_bracket(const BondedDiagram& d) { return bracket(to_pd(d)); }

LaurentPoly normalized_jones(const PdCode& pd) {
  int w = pd_writhe(pd);
  LaurentPoly factor = LaurentPoly::monomial(w % 2 == 0 ? 1 : -1, -3 * w, 0, 0);
  return factor * bracket(pd);
}

LaurentPoly normalized_jones(const BondedDiagram& d) { return normalized_jones(to_pd(d)); }

namespace {

void require_tight(const BondedDiagram& d) {
  if (!is_tight(d)) throw DiagramError("tighten first");
}

}  // namespace

PdCode resolve_bonds(const BondedDiagram& d, const std::vector<BondResolution>& choice) {
  require_tight(d);
  auto paths = bond_paths(d);
  if (choice.size() != paths.size()) throw DiagramError("resolution count does not match bond count");
  int m = static_cast<int>(d.edges.size());
  Dsu dsu(m);
  std::vector<PdCode::Crossing> raw;
  for (const Vertex& v : d.vertices) {
    if (v.kind != VertexKind::crossing) continue;
    PdCode::Crossing c;
    c.over02 = v.over02;
    for (int s = 0; s < 4; ++s) {
      c.arc[s] = v.slots[s].edge;
      c.outgoing[s] = v.slots[s].end == 0;
    }
    raw.push_back(c);
  }
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const BondPath& p = paths[k];
    if (choice[k] == BondResolution::remove) {
      for (int n : {p.node0, p.node1}) {
        NodeRoles r = node_roles(d, n);
        dsu.unite(d.at(n, r.in).edge, d.at(n, r.out).edge);
      }
      continue;
    }
    int b0 = node_roles(d, p.node0).bond, b1 = node_roles(d, p.node1).bond;
    std::array<HalfEdge, 4> hs = {d.at(p.node0, (b0 + 1) % 3), d.at(p.node0, (b0 + 2) % 3),
                                  d.at(p.node1, (b1 + 1) % 3), d.at(p.node1, (b1 + 2) % 3)};
    PdCode::Crossing c;
    c.over02 = choice[k] == BondResolution::positive;
    for (int s = 0; s < 4; ++s) {
      c.arc[s] = hs[s].edge;
      c.outgoing[s] = hs[s].end == 0;
    }
    raw.push_back(c);
  }
  PdCode pd;
  std::vector<bool> seen(m, false);
  for (auto c : raw) {
    for (int& a : c.arc) {
      a = dsu.find(a);
      seen[a] = true;
    }
    pd.crossings.push_back(c);
  }
  pd.free_loops = d.free_loops;
  for (int e = 0; e < m; ++e)
    if (d.edges[e].kind == EdgeKind::link && dsu.find(e) == e && !seen[e]) ++pd.free_loops;
  return pd;
}

LaurentPoly bonded_bracket(const BondedDiagram& d) {
  require_tight(d);
  std::size_t k = bond_paths(d).size();
  if (k > 18) throw DiagramError("too many bonds for resolution");
  BracketEngine engine;
  LaurentPoly total;
  std::vector<BondResolution> choice(k, BondResolution::remove);
  std::size_t states = 1;
  for (std::size_t i = 0; i < k; ++i) states *= 3;
  for (std::size_t code = 0; code < states; ++code) {
    int removed = 0;
    std::size_t x = code;
    for (std::size_t i = 0; i < k; ++i, x /= 3) {
      choice[i] = static_cast<BondResolution>(x % 3);
      removed += choice[i] == BondResolution::remove;
    }
    PdCode pd = resolve_bonds(d, choice);
    LaurentPoly value = engine.eval(pd.crossings) * pow(d_loop(), pd.free_loops);
    value = normalize(value, pd.crossings.empty() && pd.free_loops == 0);
    total += value * LaurentPoly::monomial(1, 0, removed, static_cast<int>(k) - removed);
  }
  return total;
}

}  // namespace bondforge
