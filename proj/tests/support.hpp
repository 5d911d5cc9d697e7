#pragma once
// Test-only helpers: a standalone braid-closure builder and a state-sum
// bracket evaluated directly on the rotation system.

#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "bondforge/diagram.hpp"
#include "bondforge/polyring.hpp"

namespace testsupport {

using namespace bondforge;

// Euler oracle: V - E + F = 2 per connected component; a free loop adds 2 faces.
inline int expected_faces(const BondedDiagram& d) {
  int n = static_cast<int>(d.vertices.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : d.edges) parent[find(e.ends[0].vertex)] = find(e.ends[1].vertex);
  int comps = 0;
  for (int i = 0; i < n; ++i) comps += find(i) == i;
  int v = n, e = static_cast<int>(d.edges.size());
  return 2 * comps - v + e + 2 * d.free_loops;
}

// Letter (i, +1) is sigma_i, (i, -1) its inverse, (i, 0) an elementary
// bond between strands i and i+1; 1-based strand index. Strands run
// downward; crossing slots are NW, SW, SE, NE.
inline BondedDiagram closure(int n, const std::vector<std::pair<int, int>>& word) {
  BondedDiagram d;
  std::vector<int> cur(n, -1);
  std::vector<Attachment> top(n);
  auto feed = [&](int pos, int v, int slot) {
    if (cur[pos] < 0) top[pos] = {v, slot};
    else d.attach(v, slot, {cur[pos], 1});
  };
  for (auto [i, s] : word) {
    int l = i - 1, r = i;
    if (s == 0) {
      // Left node (in, out, bond); right node (in, bond, out).
      int bond = d.add_edge(EdgeKind::bond);
      int nl = d.add_vertex(VertexKind::node), nr = d.add_vertex(VertexKind::node);
      feed(l, nl, 0);
      feed(r, nr, 0);
      int el = d.add_edge(EdgeKind::link), er = d.add_edge(EdgeKind::link);
      d.attach(nl, 1, {el, 0});
      d.attach(nl, 2, {bond, 0});
      d.attach(nr, 1, {bond, 1});
      d.attach(nr, 2, {er, 0});
      cur[l] = el;
      cur[r] = er;
      continue;
    }
    int v = d.add_vertex(VertexKind::crossing, s < 0);
    feed(l, v, 0);
    feed(r, v, 3);
    int sw = d.add_edge(EdgeKind::link), se = d.add_edge(EdgeKind::link);
    d.attach(v, 1, {sw, 0});
    d.attach(v, 2, {se, 0});
    cur[l] = sw;
    cur[r] = se;
  }
  for (int p = 0; p < n; ++p) {
    if (cur[p] < 0) ++d.free_loops;
    else d.attach(top[p].vertex, top[p].slot, {cur[p], 1});
  }
  return d;
}

inline std::vector<std::pair<int, int>> random_word(std::mt19937& rng, int n, int len, int bonds = 0) {
  std::vector<std::pair<int, int>> w;
  std::uniform_int_distribution<int> pick(1, n - 1), coin(0, 1);
  for (int k = 0; k < len; ++k) w.push_back({pick(rng), coin(rng) ? 1 : -1});
  for (int k = 0; k < bonds; ++k) {
    std::uniform_int_distribution<std::size_t> at(0, w.size());
    w.insert(w.begin() + static_cast<long>(at(rng)), {pick(rng), 0});
  }
  return w;
}

// U_1 whose bond passes through a small circle, crossing it twice; the bond
// is over at the first crossing iff `over1`, at the second iff `over2`.
inline BondedDiagram bond_through_circle(bool over1 = true, bool over2 = true) {
  auto d = gen_example(ExampleFamily::U, 1);
  int bond = -1;
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e)
    if (d.edges[e].kind == EdgeKind::bond) bond = e;
  Attachment far = d.edges[bond].ends[1];
  int x1 = d.add_vertex(VertexKind::crossing, over1);
  int x2 = d.add_vertex(VertexKind::crossing, over2);
  int mid = d.add_edge(EdgeKind::bond), last = d.add_edge(EdgeKind::bond);
  d.attach(x1, 0, {bond, 1});
  d.attach(x1, 2, {mid, 0});
  d.attach(x2, 0, {mid, 1});
  d.attach(x2, 2, {last, 0});
  d.attach(far.vertex, far.slot, {last, 1});
  int top = d.add_edge(EdgeKind::link), bottom = d.add_edge(EdgeKind::link);
  d.attach(x1, 3, {top, 0});
  d.attach(x2, 3, {top, 1});
  d.attach(x2, 1, {bottom, 0});
  d.attach(x1, 1, {bottom, 1});
  return d;
}

// Bracket by plain state enumeration. Loops are counted by walking the
// graph whose points are edge ends, joined along edges and by the chosen
// smoothing inside each crossing. The A-smoothing merges the two regions
// swept when the over strand turns counterclockwise.
inline LaurentPoly oracle_bracket(const BondedDiagram& d) {
  int m = static_cast<int>(d.edges.size());
  int nc = static_cast<int>(d.vertices.size());
  if (m == 0 && d.free_loops == 0) return LaurentPoly(1);
  LaurentPoly total;
  LaurentPoly delta = -LaurentPoly::A(2) - LaurentPoly::A(-2);
  for (long mask = 0; mask < (1L << nc); ++mask) {
    std::vector<int> partner(2 * m, -1);
    int exponent = 0;
    for (int v = 0; v < nc; ++v) {
      const Vertex& x = d.vertices[v];
      bool a_side = !(mask >> v & 1);
      exponent += a_side ? 1 : -1;
      // Over strand at slots o, o+2; it sweeps the regions (o, o+1) and
      // (o+2, o+3), so A pairs o+1 with o+2 and o+3 with o.
      int o = x.over02 ? 0 : 1;
      int first = a_side ? o + 1 : o;
      for (int k : {first, first + 2}) {
        HalfEdge h1 = x.slots[k % 4], h2 = x.slots[(k + 1) % 4];
        partner[2 * h1.edge + h1.end] = 2 * h2.edge + h2.end;
        partner[2 * h2.edge + h2.end] = 2 * h1.edge + h1.end;
      }
    }
    std::vector<bool> seen(2 * m, false);
    int loops = d.free_loops;
    for (int s = 0; s < 2 * m; ++s) {
      if (seen[s]) continue;
      ++loops;
      int p = s;
      while (!seen[p]) {
        seen[p] = true;
        int q = p ^ 1;
        seen[q] = true;
        p = partner[q];
      }
    }
    LaurentPoly term = LaurentPoly::A(exponent);
    for (int k = 1; k < loops; ++k) term *= delta;
    total += term;
  }
  return total;
}

}  // namespace testsupport
