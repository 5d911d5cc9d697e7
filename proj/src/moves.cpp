#include "bondforge/moves.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace bondforge {

namespace {

// Mutable view for rewriting; dead parts are dropped by finish().
struct Editor {
  BondedDiagram d;
  std::vector<bool> edge_alive, vertex_alive;

  explicit Editor(const BondedDiagram& x)
      : d(x), edge_alive(x.edges.size(), true), vertex_alive(x.vertices.size(), true) {}

  int edge(EdgeKind kind, BondSign sign = BondSign::plain) {
    edge_alive.push_back(true);
    return d.add_edge(kind, sign);
  }
  int edge_like(int model) { return edge(d.edges[model].kind, d.edges[model].sign); }
  int crossing(bool over02) {
    vertex_alive.push_back(true);
    return d.add_vertex(VertexKind::crossing, over02);
  }
  int node() {
    vertex_alive.push_back(true);
    return d.add_vertex(VertexKind::node);
  }
  void kill_edge(int e) { edge_alive[e] = false; }
  void kill_vertex(int v) { vertex_alive[v] = false; }
  void attach(Attachment a, HalfEdge h) { d.attach(a.vertex, a.slot, h); }

  // Joins the edges at two slots of v into one, keeping the edge at sa.
  void fuse(int v, int sa, int sb) {
    HalfEdge ha = d.at(v, sa), hb = d.at(v, sb);
    if (ha.edge == hb.edge) {
      kill_edge(ha.edge);
      if (d.edges[ha.edge].kind == EdgeKind::link) ++d.free_loops;
      return;
    }
    Attachment far = d.where(BondedDiagram::other(hb));
    kill_edge(hb.edge);
    attach(far, ha);
  }
  // Removes a crossing, letting both strands run straight through.
  void dissolve(int v) {
    fuse(v, 0, 2);
    fuse(v, 1, 3);
    kill_vertex(v);
  }
  BondedDiagram finish() { return compacted(d, edge_alive, vertex_alive); }
};

int start_of(const BondedDiagram& d, HalfEdge dart) { return d.where(dart).vertex; }
// Slot at which a dart arrives.
int arrival_slot(const BondedDiagram& d, HalfEdge dart) { return d.where(BondedDiagram::other(dart)).slot; }
int departure_slot(const BondedDiagram& d, HalfEdge dart) { return d.where(dart).slot; }

bool is_link(const BondedDiagram& d, HalfEdge h) { return d.edges[h.edge].kind == EdgeKind::link; }
bool is_crossing(const BondedDiagram& d, int v) {
  return v >= 0 && d.vertices[v].kind == VertexKind::crossing;
}
bool is_node(const BondedDiagram& d, int v) { return v >= 0 && d.vertices[v].kind == VertexKind::node; }
// Whether the strand through `slot` of crossing v is the over strand.
bool over_at(const BondedDiagram& d, int v, int slot) { return d.vertices[v].over02 == (slot % 2 == 0); }
int mod(int x, int m) { return ((x % m) + m) % m; }

MoveKind strand_kind(int links, int bonds, MoveKind all_link, MoveKind all_bond, MoveKind mixed) {
  if (bonds == 0) return all_link;
  if (links == 0) return all_bond;
  return mixed;
}

std::vector<MoveSite> sites_tagged(std::vector<MoveSite> all, MoveKind k) {
  std::erase_if(all, [&](const MoveSite& s) { return s.kind != k; });
  return all;
}

// ---- R1 --------------------------------------------------------------

std::vector<MoveSite> curl_sites(const BondedDiagram& d) {
  std::vector<MoveSite> out;
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    MoveKind k = d.edges[e].kind == EdgeKind::link ? MoveKind::R1 : MoveKind::bondR1;
    for (int side = 0; side < 2; ++side) out.push_back({k, MoveForm::create, {{e, side}}, -1, 0});
  }
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    if (!is_crossing(d, v)) continue;
    for (int s = 0; s < 4; ++s) {
      HalfEdge h = d.at(v, s);
      if (h.edge != d.at(v, (s + 1) % 4).edge) continue;
      MoveKind k = is_link(d, h) ? MoveKind::R1 : MoveKind::bondR1;
      out.push_back({k, MoveForm::remove, {h}, v, 0});
    }
  }
  return out;
}

// A curl in the face left of the dart; param 0 puts the incoming part on top.
BondedDiagram curl_create(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  HalfEdge dart = s.darts[0];
  int e = dart.edge, a = dart.end;
  Attachment q = d.where({e, 1 - a});
  int x = ed.crossing(s.param == 0);
  int loop = ed.edge_like(e), rest = ed.edge_like(e);
  ed.d.attach(x, 0, {e, 1 - a});
  ed.d.attach(x, 2, {loop, a});
  ed.d.attach(x, 3, {loop, 1 - a});
  ed.d.attach(x, 1, {rest, a});
  ed.attach(q, {rest, 1 - a});
  return ed.finish();
}

BondedDiagram curl_remove(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  ed.dissolve(s.vertex);
  return ed.finish();
}

// ---- R2 --------------------------------------------------------------

std::vector<MoveSite> bigon_sites(const BondedDiagram& d, const std::vector<Face>& fs) {
  std::vector<MoveSite> out;
  auto kind_of = [&](HalfEdge x, HalfEdge y) {
    int links = is_link(d, x) + is_link(d, y);
    return strand_kind(links, 2 - links, MoveKind::R2, MoveKind::bondR2, MoveKind::mixedR2);
  };
  for (const Face& f : fs) {
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        if (f[i].edge != f[j].edge) out.push_back({kind_of(f[i], f[j]), MoveForm::create, {f[i], f[j]}, -1, 0});
    if (f.size() != 2) continue;
    int x1 = start_of(d, f[0]), x2 = start_of(d, f[1]);
    if (!is_crossing(d, x1) || !is_crossing(d, x2) || x1 == x2 || f[0].edge == f[1].edge) continue;
    if (over_at(d, x1, departure_slot(d, f[0])) != over_at(d, x2, arrival_slot(d, f[0]))) continue;
    out.push_back({kind_of(f[0], f[1]), MoveForm::remove, {f[0], f[1]}, -1, 0});
  }
  return out;
}

// Pushes a finger of the first dart's edge across the second inside their
// common face. param 0: the finger passes over.
BondedDiagram bigon_create(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  HalfEdge di = s.darts[0], dj = s.darts[1];
  int ei = di.edge, a = di.end, ej = dj.edge, b = dj.end;
  Attachment q = d.where({ei, 1 - a}), sa = d.where({ej, 1 - b});
  bool over02 = s.param != 0;
  int x1 = ed.crossing(over02), x2 = ed.crossing(over02);
  int ei2 = ed.edge_like(ei), ei3 = ed.edge_like(ei);
  int ej2 = ed.edge_like(ej), ej3 = ed.edge_like(ej);
  ed.d.attach(x1, 3, {ei, 1 - a});
  ed.d.attach(x1, 1, {ei2, a});
  ed.d.attach(x2, 1, {ei2, 1 - a});
  ed.d.attach(x2, 3, {ei3, a});
  ed.attach(q, {ei3, 1 - a});
  ed.d.attach(x2, 0, {ej, 1 - b});
  ed.d.attach(x2, 2, {ej2, b});
  ed.d.attach(x1, 0, {ej2, 1 - b});
  ed.d.attach(x1, 2, {ej3, b});
  ed.attach(sa, {ej3, 1 - b});
  return ed.finish();
}

BondedDiagram bigon_remove(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  ed.dissolve(start_of(d, s.darts[0]));
  ed.dissolve(start_of(d, s.darts[1]));
  return ed.finish();
}

// ---- R3 --------------------------------------------------------------

std::vector<MoveSite> triangle_sites(const BondedDiagram& d, const std::vector<Face>& fs) {
  std::vector<MoveSite> out;
  for (const Face& f : fs) {
    if (f.size() != 3) continue;
    int x[3];
    bool ok = true;
    for (int k = 0; k < 3; ++k) x[k] = start_of(d, f[k]), ok = ok && is_crossing(d, x[k]);
    if (!ok || x[0] == x[1] || x[1] == x[2] || x[0] == x[2]) continue;
    if (f[0].edge == f[1].edge || f[1].edge == f[2].edge || f[0].edge == f[2].edge) continue;
    bool movable = false;
    int links = 0;
    for (int k = 0; k < 3; ++k) {
      movable = movable || (over_at(d, x[k], departure_slot(d, f[k])) && over_at(d, x[(k + 1) % 3], arrival_slot(d, f[k])));
      links += is_link(d, f[k]);
    }
    if (!movable) continue;
    out.push_back({strand_kind(links, 3 - links, MoveKind::R3, MoveKind::bondR3, MoveKind::mixedR3),
                   MoveForm::swap, f, -1, 0});
  }
  return out;
}

// Moves one strand across the crossing of the other two. Each new crossing
// pairs two outer ends that sat at neighbouring old crossings, and keeps the
// over strand of the old crossing of the same two strands.
BondedDiagram triangle_swap(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  const Face& f = s.darts;
  int x[3], a[3];
  HalfEdge outer_p[3], outer_q[3];
  bool over[3];
  for (int k = 0; k < 3; ++k) {
    x[k] = start_of(d, f[k]);
    a[k] = arrival_slot(d, f[mod(k - 1, 3)]);
    outer_q[k] = d.at(x[k], (a[k] + 1) % 4);
    outer_p[k] = d.at(x[k], (a[k] + 2) % 4);
    over[k] = over_at(d, x[k], mod(a[k] - 1, 4));  // strand of dart k at its start
  }
  for (int k = 0; k < 3; ++k) {
    int prev = mod(k - 1, 3), next = (k + 1) % 3;
    ed.d.vertices[x[k]].over02 = over[prev];
    ed.d.attach(x[k], 0, outer_p[k]);
    ed.d.attach(x[k], 1, outer_q[next]);
  }
  for (int j = 0; j < 3; ++j) {
    int e = f[j].edge;
    ed.d.attach(x[mod(j - 1, 3)], 3, {e, f[j].end});
    ed.d.attach(x[(j + 1) % 3], 2, {e, 1 - f[j].end});
  }
  return ed.finish();
}

// ---- VS --------------------------------------------------------------

// The crossing next to node v along slot n0, if sliding it past v is well
// formed; -1 otherwise.
int slide_in_crossing(const BondedDiagram& d, int v, int n0) {
  HalfEdge e3 = d.at(v, n0);
  Attachment xa = d.where(BondedDiagram::other(e3));
  if (!is_crossing(d, xa.vertex)) return -1;
  int f = d.at(xa.vertex, (xa.slot + 2) % 4).edge;
  if (f == e3.edge || f == d.at(v, (n0 + 1) % 3).edge || f == d.at(v, (n0 + 2) % 3).edge) return -1;
  return xa.vertex;
}

std::vector<MoveSite> slide_sites(const BondedDiagram& d, const std::vector<Face>& fs) {
  std::vector<MoveSite> out;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    if (!is_node(d, v)) continue;
    for (int n0 = 0; n0 < 3; ++n0)
      if (slide_in_crossing(d, v, n0) >= 0) out.push_back({MoveKind::VS, MoveForm::slide_in, {d.at(v, n0)}, v, 0});
  }
  for (const Face& f : fs) {
    if (f.size() == 3) {
      for (int r = 0; r < 3; ++r) {
        Face g = {f[r], f[(r + 1) % 3], f[(r + 2) % 3]};
        int n = start_of(d, g[0]), x1 = start_of(d, g[1]), x2 = start_of(d, g[2]);
        if (!is_node(d, n) || !is_crossing(d, x1) || !is_crossing(d, x2) || x1 == x2) continue;
        if (g[0].edge == g[1].edge || g[1].edge == g[2].edge || g[0].edge == g[2].edge) continue;
        if (over_at(d, x1, departure_slot(d, g[1])) != over_at(d, x2, arrival_slot(d, g[1]))) continue;
        std::vector<int> dead = {g[0].edge, g[1].edge, g[2].edge};
        int a = arrival_slot(d, g[0]), b = arrival_slot(d, g[1]);
        int n0 = mod(departure_slot(d, g[0]) - 1, 3);
        std::vector<HalfEdge> outer = {d.at(x1, (a + 1) % 4), d.at(x1, (a + 2) % 4), d.at(x2, (b + 1) % 4),
                                       d.at(x2, (b + 2) % 4), d.at(n, n0)};
        bool clean = std::none_of(outer.begin(), outer.end(), [&](HalfEdge h) {
          return std::find(dead.begin(), dead.end(), h.edge) != dead.end();
        });
        if (clean) out.push_back({MoveKind::VS, MoveForm::slide_out, g, n, 0});
      }
    }
    if (f.size() == 4) {
      for (int r = 0; r < 4; ++r) {
        Face g = {f[r], f[(r + 1) % 4], f[(r + 2) % 4], f[(r + 3) % 4]};
        int n1 = start_of(d, g[0]), n2 = start_of(d, g[1]), x2 = start_of(d, g[2]), x1 = start_of(d, g[3]);
        if (is_link(d, g[0]) || !is_node(d, n1) || !is_node(d, n2) || n1 == n2) continue;
        if (!is_crossing(d, x1) || !is_crossing(d, x2) || x1 == x2) continue;
        if (!is_link(d, g[1]) || !is_link(d, g[3])) continue;
        if (over_at(d, x2, departure_slot(d, g[2])) != over_at(d, x1, arrival_slot(d, g[2]))) continue;
        std::vector<int> dead = {g[1].edge, g[2].edge, g[3].edge};
        if (dead[0] == dead[1] || dead[1] == dead[2] || dead[0] == dead[2]) continue;
        int p = arrival_slot(d, g[1]), q = arrival_slot(d, g[2]);
        int b1 = departure_slot(d, g[0]), b2 = arrival_slot(d, g[0]);
        std::vector<HalfEdge> outer = {d.at(x2, (p + 1) % 4), d.at(x2, (p + 2) % 4), d.at(x1, (q + 1) % 4),
                                       d.at(x1, (q + 2) % 4), d.at(n1, (b1 + 2) % 3), d.at(n2, (b2 + 1) % 3)};
        bool clean = std::none_of(outer.begin(), outer.end(), [&](HalfEdge h) {
          return std::find(dead.begin(), dead.end(), h.edge) != dead.end();
        });
        if (clean) out.push_back({MoveKind::VS, MoveForm::slide_h, g, n1, 0});
      }
    }
  }
  return out;
}

// The strand crossing the edge at slot n0 next to the node moves across the
// node and now crosses the node's other two edges.
BondedDiagram slide_in(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  int n = s.vertex;
  HalfEdge e3 = s.darts[0];
  int n0 = d.where(e3).slot;
  HalfEdge e3x = BondedDiagram::other(e3);
  Attachment xa = d.where(e3x);
  int x = xa.vertex, x0 = xa.slot;
  bool s_over = over_at(d, x, (x0 + 1) % 4);
  HalfEdge fh = d.at(x, (x0 + 2) % 4);
  Attachment far = d.where(BondedDiagram::other(fh));
  ed.kill_edge(fh.edge);
  ed.attach(far, e3x);
  // Read the remaining ends only now: the fused edge may have landed on x.
  HalfEdge g1 = ed.d.at(n, (n0 + 1) % 3), g2 = ed.d.at(n, (n0 + 2) % 3);
  HalfEdge w = ed.d.at(x, (x0 + 3) % 4), e = ed.d.at(x, (x0 + 1) % 4);
  int x1 = x, x2 = ed.crossing(!s_over);
  ed.d.vertices[x1].over02 = !s_over;
  int h1 = ed.edge_like(g1.edge), h2 = ed.edge_like(g2.edge), m = ed.edge_like(w.edge);
  ed.d.attach(x1, 1, w);
  ed.d.attach(x1, 2, g1);
  ed.d.attach(x2, 2, g2);
  ed.d.attach(x2, 3, e);
  ed.d.attach(n, (n0 + 1) % 3, {h1, g1.end});
  ed.d.attach(x1, 0, {h1, 1 - g1.end});
  ed.d.attach(n, (n0 + 2) % 3, {h2, g2.end});
  ed.d.attach(x2, 0, {h2, 1 - g2.end});
  int flow = w.end == 1 ? 0 : 1;
  ed.d.attach(x1, 3, {m, flow});
  ed.d.attach(x2, 1, {m, 1 - flow});
  return ed.finish();
}

// Inverse of slide_in: the face is node, crossing, crossing.
BondedDiagram slide_out(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  const Face& g = s.darts;
  int n = s.vertex, x1 = start_of(d, g[1]), x2 = start_of(d, g[2]);
  int n1 = departure_slot(d, g[0]), n2 = arrival_slot(d, g[2]), n0 = mod(n1 - 1, 3);
  int a = arrival_slot(d, g[0]), b = arrival_slot(d, g[1]);
  bool s_over = over_at(d, x1, (a + 1) % 4);
  HalfEdge w = d.at(x1, (a + 1) % 4), g1 = d.at(x1, (a + 2) % 4);
  HalfEdge g2 = d.at(x2, (b + 1) % 4), e = d.at(x2, (b + 2) % 4);
  HalfEdge f = d.at(n, n0);
  for (const HalfEdge& h : g) ed.kill_edge(h.edge);
  ed.kill_vertex(x2);
  int k = ed.edge_like(f.edge);
  ed.d.vertices[x1].over02 = !s_over;
  ed.d.attach(x1, 1, e);
  ed.d.attach(x1, 2, f);
  ed.d.attach(x1, 3, w);
  ed.d.attach(n, n0, {k, f.end});
  ed.d.attach(x1, 0, {k, 1 - f.end});
  ed.d.attach(n, n1, g1);
  ed.d.attach(n, n2, g2);
  return ed.finish();
}

// A strand crossing both link edges on one side of a tight bond moves across
// the whole bond and its nodes to cross the two link edges on the other side.
BondedDiagram slide_h(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  const Face& g = s.darts;
  int n1 = start_of(d, g[0]), n2 = start_of(d, g[1]), x2 = start_of(d, g[2]), x1 = start_of(d, g[3]);
  int b1 = departure_slot(d, g[0]), b2 = arrival_slot(d, g[0]);
  int p = arrival_slot(d, g[1]), q = arrival_slot(d, g[2]);
  bool s_over = over_at(d, x1, q);
  HalfEdge e = d.at(x2, (p + 1) % 4), g2o = d.at(x2, (p + 2) % 4);
  HalfEdge g1o = d.at(x1, (q + 1) % 4), w = d.at(x1, (q + 2) % 4);
  HalfEdge g1 = d.at(n1, (b1 + 2) % 3), g2 = d.at(n2, (b2 + 1) % 3);
  int h1 = g[3].edge, h2 = g[1].edge, m = g[2].edge;
  ed.d.attach(n1, (b1 + 1) % 3, g1o);
  ed.d.attach(n2, (b2 + 2) % 3, g2o);
  ed.d.vertices[x1].over02 = !s_over;
  ed.d.vertices[x2].over02 = s_over;
  ed.d.attach(x1, 1, w);
  ed.d.attach(x1, 2, g1);
  ed.d.attach(x2, 1, g2);
  ed.d.attach(x2, 2, e);
  ed.d.attach(n1, (b1 + 2) % 3, {h1, g1.end});
  ed.d.attach(x1, 0, {h1, 1 - g1.end});
  ed.d.attach(n2, (b2 + 1) % 3, {h2, g2.end});
  ed.d.attach(x2, 3, {h2, 1 - g2.end});
  int flow = w.end == 1 ? 0 : 1;
  ed.d.attach(x1, 3, {m, flow});
  ed.d.attach(x2, 0, {m, 1 - flow});
  return ed.finish();
}

// ---- TVT -------------------------------------------------------------

std::vector<MoveSite> twist_sites(const BondedDiagram& d) {
  std::vector<MoveSite> out;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    if (!is_node(d, v)) continue;
    int c = node_roles(d, v).bond;
    for (int side = 1; side <= 2; ++side) out.push_back({MoveKind::TVT, MoveForm::create, {d.at(v, (c + side) % 3)}, v, 0});
    HalfEdge bond = d.at(v, c);
    Attachment xb = d.where(BondedDiagram::other(bond));
    if (!is_crossing(d, xb.vertex)) continue;
    for (int side = 1; side <= 2; ++side) {
      HalfEdge link = d.at(v, (c + 3 - side) % 3);
      Attachment xl = d.where(BondedDiagram::other(link));
      int want = side == 1 ? (xb.slot + 1) % 4 : (xb.slot + 3) % 4;
      if (xl.vertex == xb.vertex && xl.slot == want) out.push_back({MoveKind::TVT, MoveForm::remove, {link}, v, 0});
    }
  }
  return out;
}

// Swaps the bond with the neighbouring link edge named by the site; the two
// cross just outside the node. param 0: the bond passes over.
BondedDiagram twist_create(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  int n = s.vertex, b = node_roles(d, n).bond;
  HalfEdge hl = s.darts[0];
  int ls = d.where(hl).slot;
  bool first = ls == (b + 1) % 3;
  HalfEdge hb = d.at(n, b);
  int x = ed.crossing(s.param == 0);
  int nb = ed.edge_like(hb.edge), nl = ed.edge_like(hl.edge);
  ed.d.attach(x, 0, hb);
  ed.d.attach(x, first ? 1 : 3, hl);
  ed.d.attach(x, 2, {nb, 1 - hb.end});
  ed.d.attach(n, ls, {nb, hb.end});
  ed.d.attach(x, first ? 3 : 1, {nl, 1 - hl.end});
  ed.d.attach(n, b, {nl, hl.end});
  return ed.finish();
}

BondedDiagram twist_remove(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  int n = s.vertex, c = node_roles(d, n).bond;
  HalfEdge link = s.darts[0], bond = d.at(n, c);
  int ls = d.where(link).slot;
  Attachment xb = d.where(BondedDiagram::other(bond));
  int x = xb.vertex, k = xb.slot;
  bool first = ls == (c + 2) % 3;  // undoes a swap with the first link slot
  HalfEdge bond_far = d.at(x, (k + 2) % 4), link_far = d.at(x, first ? (k + 3) % 4 : (k + 1) % 4);
  ed.kill_edge(bond.edge);
  ed.kill_edge(link.edge);
  ed.kill_vertex(x);
  ed.d.attach(n, ls, bond_far);
  ed.d.attach(n, c, link_far);
  return ed.finish();
}

// ---- RVT -------------------------------------------------------------

struct Flip {
  int n1 = -1, n2 = -1, b1 = -1, b2 = -1;
};

std::vector<Flip> tight_bonds(const BondedDiagram& d) {
  std::vector<Flip> out;
  for (const BondPath& p : bond_paths(d))
    if (p.crossings.empty()) out.push_back({p.node0, p.node1, node_roles(d, p.node0).bond, node_roles(d, p.node1).bond});
  return out;
}

// The crossing both link edges of a node run into, at consecutive slots
// (slot of `lo` first). Returns {crossing, slot of lo} or {-1, -1}.
std::pair<int, int> shared_crossing(const BondedDiagram& d, HalfEdge lo, HalfEdge hi) {
  Attachment a = d.where(BondedDiagram::other(lo)), b = d.where(BondedDiagram::other(hi));
  if (lo.edge == hi.edge || !is_crossing(d, a.vertex) || a.vertex != b.vertex || b.slot != (a.slot + 1) % 4)
    return {-1, -1};
  return {a.vertex, a.slot};
}

std::vector<MoveSite> flip_sites(const BondedDiagram& d) {
  std::vector<MoveSite> out;
  for (const Flip& h : tight_bonds(d)) {
    HalfEdge bond = d.at(h.n1, h.b1);
    out.push_back({MoveKind::RVT, MoveForm::create, {bond}, h.n1, 0});
    auto [xl, k] = shared_crossing(d, d.at(h.n1, (h.b1 + 2) % 3), d.at(h.n1, (h.b1 + 1) % 3));
    auto [xr, m] = shared_crossing(d, d.at(h.n2, (h.b2 + 2) % 3), d.at(h.n2, (h.b2 + 1) % 3));
    if (xl < 0 || xr < 0 || xl == xr) continue;
    if (over_at(d, xl, (k + 2) % 4) != over_at(d, xr, (m + 3) % 4)) continue;
    out.push_back({MoveKind::RVT, MoveForm::remove, {bond}, h.n1, 0});
  }
  return out;
}

// Turns the rigid H (two nodes and their bond) over about the bond. The link
// ends on each side swap and cross beside their node. param 0: the upper
// ends travel over.
BondedDiagram flip_create(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  int n1 = s.vertex, b1 = node_roles(d, n1).bond;
  Attachment far = d.where(BondedDiagram::other(d.at(n1, b1)));
  int n2 = far.vertex, b2 = far.slot;
  HalfEdge t1 = d.at(n1, (b1 + 1) % 3), u1 = d.at(n1, (b1 + 2) % 3);
  HalfEdge t2 = d.at(n2, (b2 + 2) % 3), u2 = d.at(n2, (b2 + 1) % 3);
  int xl = ed.crossing(s.param == 0), xr = ed.crossing(s.param != 0);
  int p1 = ed.edge_like(t1.edge), q1 = ed.edge_like(u1.edge);
  int p2 = ed.edge_like(t2.edge), q2 = ed.edge_like(u2.edge);
  ed.d.attach(xl, 0, t1);
  ed.d.attach(xl, 1, u1);
  ed.d.attach(n1, (b1 + 2) % 3, {p1, t1.end});
  ed.d.attach(xl, 2, {p1, 1 - t1.end});
  ed.d.attach(n1, (b1 + 1) % 3, {q1, u1.end});
  ed.d.attach(xl, 3, {q1, 1 - u1.end});
  ed.d.attach(xr, 3, t2);
  ed.d.attach(xr, 2, u2);
  ed.d.attach(n2, (b2 + 1) % 3, {p2, t2.end});
  ed.d.attach(xr, 1, {p2, 1 - t2.end});
  ed.d.attach(n2, (b2 + 2) % 3, {q2, u2.end});
  ed.d.attach(xr, 0, {q2, 1 - u2.end});
  return ed.finish();
}

BondedDiagram flip_remove(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  int n1 = s.vertex, b1 = node_roles(d, n1).bond;
  Attachment far = d.where(BondedDiagram::other(d.at(n1, b1)));
  int n2 = far.vertex, b2 = far.slot;
  HalfEdge lo1 = d.at(n1, (b1 + 2) % 3), hi1 = d.at(n1, (b1 + 1) % 3);
  HalfEdge lo2 = d.at(n2, (b2 + 2) % 3), hi2 = d.at(n2, (b2 + 1) % 3);
  auto [xl, k] = shared_crossing(d, lo1, hi1);
  auto [xr, m] = shared_crossing(d, lo2, hi2);
  HalfEdge nw = d.at(xl, (k + 2) % 4), sw = d.at(xl, (k + 3) % 4);
  HalfEdge se = d.at(xr, (m + 2) % 4), ne = d.at(xr, (m + 3) % 4);
  for (HalfEdge h : {lo1, hi1, lo2, hi2}) ed.kill_edge(h.edge);
  ed.kill_vertex(xl);
  ed.kill_vertex(xr);
  ed.d.attach(n1, (b1 + 1) % 3, nw);
  ed.d.attach(n1, (b1 + 2) % 3, sw);
  ed.d.attach(n2, (b2 + 2) % 3, ne);
  ed.d.attach(n2, (b2 + 1) % 3, se);
  return ed.finish();
}

// ---- node slide ------------------------------------------------------

// A node may slide along its link arc up to the neighbouring vertices. The
// rotation system does not see this, so the rewrite is the identity. Passing
// a crossing is forbidden, and two nodes on one arc cannot pass each other.
std::vector<MoveSite> node_slide_sites(const BondedDiagram& d) {
  std::vector<MoveSite> out;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
    if (is_node(d, v)) out.push_back({MoveKind::nodeSlide, MoveForm::swap, {d.at(v, node_roles(d, v).out)}, v, 0});
  return out;
}

BondedDiagram node_slide(const BondedDiagram& d, const MoveSite&) { return d; }

// ---- enhanced pairs --------------------------------------------------

bool opposite_enhanced(BondSign a, BondSign b) { return a != BondSign::plain && b == opposite(a); }

std::vector<MoveSite> pair_sites(const BondedDiagram& d, const std::vector<Face>& fs) {
  std::vector<MoveSite> out;
  for (const Face& f : fs) {
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        if (f[i].edge != f[j].edge && is_link(d, f[i]) && is_link(d, f[j]))
          out.push_back({MoveKind::enhancedCancel, MoveForm::create, {f[i], f[j]}, -1, 0});
    if (f.size() != 4) continue;
    for (int r = 0; r < 2; ++r) {
      Face g = {f[r], f[r + 1], f[(r + 2) % 4], f[(r + 3) % 4]};
      if (!is_link(d, g[0]) || is_link(d, g[1]) || !is_link(d, g[2]) || is_link(d, g[3])) continue;
      std::vector<int> vs;
      for (HalfEdge h : g) vs.push_back(start_of(d, h));
      if (!std::all_of(vs.begin(), vs.end(), [&](int v) { return is_node(d, v); })) continue;
      std::sort(vs.begin(), vs.end());
      if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) continue;
      if (g[0].edge == g[2].edge) continue;
      if (!opposite_enhanced(d.edges[g[1].edge].sign, d.edges[g[3].edge].sign)) continue;
      out.push_back({MoveKind::enhancedCancel, MoveForm::remove, g, -1, 0});
    }
  }
  return out;
}

// Two parallel bonds of opposite enhanced sign across a face, between the
// two given edges. param 0: the bond nearer the first dart's start attracts.
BondedDiagram pair_create(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  HalfEdge di = s.darts[0], dj = s.darts[1];
  int ei = di.edge, a = di.end, ej = dj.edge, b = dj.end;
  Attachment q = d.where({ei, 1 - a}), sa = d.where({ej, 1 - b});
  BondSign left = s.param == 0 ? BondSign::attracting : BondSign::repelling;
  int a1 = ed.node(), a2 = ed.node(), c2 = ed.node(), c1 = ed.node();
  int p1 = ed.edge_like(ei), p2 = ed.edge_like(ei), r1 = ed.edge_like(ej), r2 = ed.edge_like(ej);
  int bl = ed.edge(EdgeKind::bond, left), br = ed.edge(EdgeKind::bond, opposite(left));
  ed.d.attach(a1, 0, {ei, 1 - a});
  ed.d.attach(a1, 1, {p1, a});
  ed.d.attach(a2, 0, {p1, 1 - a});
  ed.d.attach(a2, 1, {p2, a});
  ed.attach(q, {p2, 1 - a});
  ed.d.attach(c2, 0, {ej, 1 - b});
  ed.d.attach(c2, 1, {r1, b});
  ed.d.attach(c1, 0, {r1, 1 - b});
  ed.d.attach(c1, 1, {r2, b});
  ed.attach(sa, {r2, 1 - b});
  ed.d.attach(a1, 2, {bl, 0});
  ed.d.attach(c1, 2, {bl, 1});
  ed.d.attach(a2, 2, {br, 0});
  ed.d.attach(c2, 2, {br, 1});
  return ed.finish();
}

BondedDiagram pair_remove(const BondedDiagram& d, const MoveSite& s) {
  Editor ed(d);
  for (int k : {1, 3}) ed.kill_edge(s.darts[k].edge);
  for (const HalfEdge& h : s.darts) {
    int v = start_of(d, h);
    NodeRoles r = node_roles(d, v);
    ed.fuse(v, r.in, r.out);
    ed.kill_vertex(v);
  }
  return ed.finish();
}

bool growing(const MoveSite& s) {
  return s.form == MoveForm::slide_in || (s.form == MoveForm::create && s.kind != MoveKind::enhancedCancel);
}

std::vector<MoveSite> family_sites(const BondedDiagram& d, MoveKind k, const std::vector<Face>& fs) {
  switch (k) {
    case MoveKind::R1:
    case MoveKind::bondR1: return curl_sites(d);
    case MoveKind::R2:
    case MoveKind::bondR2:
    case MoveKind::mixedR2: return bigon_sites(d, fs);
    case MoveKind::R3:
    case MoveKind::bondR3:
    case MoveKind::mixedR3: return triangle_sites(d, fs);
    case MoveKind::VS: return slide_sites(d, fs);
    case MoveKind::TVT: return twist_sites(d);
    case MoveKind::RVT: return flip_sites(d);
    case MoveKind::nodeSlide: return node_slide_sites(d);
    case MoveKind::enhancedCancel: return pair_sites(d, fs);
  }
  return {};
}

std::vector<MoveSite> sites_of(const BondedDiagram& d, MoveKind k, Calculus c, const std::vector<Face>& fs) {
  if (!in_calculus(k, c)) return {};
  auto out = sites_tagged(family_sites(d, k, fs), k);
  if (c == Calculus::rigid_tight && k == MoveKind::VS)
    std::erase_if(out, [](const MoveSite& s) { return s.form != MoveForm::slide_h; });
  return out;
}

BondedDiagram rewrite(const BondedDiagram& d, const MoveSite& s) {
  switch (s.kind) {
    case MoveKind::R1:
    case MoveKind::bondR1: return s.form == MoveForm::create ? curl_create(d, s) : curl_remove(d, s);
    case MoveKind::R2:
    case MoveKind::bondR2:
    case MoveKind::mixedR2: return s.form == MoveForm::create ? bigon_create(d, s) : bigon_remove(d, s);
    case MoveKind::R3:
    case MoveKind::bondR3:
    case MoveKind::mixedR3: return triangle_swap(d, s);
    case MoveKind::VS:
      if (s.form == MoveForm::slide_in) return slide_in(d, s);
      if (s.form == MoveForm::slide_out) return slide_out(d, s);
      return slide_h(d, s);
    case MoveKind::TVT: return s.form == MoveForm::create ? twist_create(d, s) : twist_remove(d, s);
    case MoveKind::RVT: return s.form == MoveForm::create ? flip_create(d, s) : flip_remove(d, s);
    case MoveKind::nodeSlide: return node_slide(d, s);
    case MoveKind::enhancedCancel: return s.form == MoveForm::create ? pair_create(d, s) : pair_remove(d, s);
  }
  throw DiagramError("unknown move");
}

// Slides the crossing next to `node` along its bond across the node.
BondedDiagram slide_off_bond(const BondedDiagram& d, int node) {
  int b = node_roles(d, node).bond;
  if (slide_in_crossing(d, node, b) < 0) throw DiagramError("no crossing to slide at node " + std::to_string(node));
  return slide_in(d, {MoveKind::VS, MoveForm::slide_in, {d.at(node, b)}, node, 0});
}

const char* form_name(MoveForm f) {
  switch (f) {
    case MoveForm::create: return "create";
    case MoveForm::remove: return "remove";
    case MoveForm::swap: return "swap";
    case MoveForm::slide_in: return "slide-in";
    case MoveForm::slide_out: return "slide-out";
    case MoveForm::slide_h: return "slide-h";
  }
  return "?";
}

}  // namespace

const std::vector<MoveKind>& all_move_kinds() {
  static const std::vector<MoveKind> kinds = {
      MoveKind::R1,     MoveKind::R2,      MoveKind::R3,      MoveKind::bondR1, MoveKind::bondR2,
      MoveKind::bondR3, MoveKind::mixedR2, MoveKind::mixedR3, MoveKind::VS,     MoveKind::TVT,
      MoveKind::RVT,    MoveKind::nodeSlide, MoveKind::enhancedCancel};
  return kinds;
}

std::string to_string(MoveKind k) {
  static const char* names[] = {"R1", "R2", "R3", "bondR1", "bondR2", "bondR3", "mixedR2",
                                "mixedR3", "VS", "TVT", "RVT", "nodeSlide", "enhancedCancel"};
  return names[static_cast<int>(k)];
}

MoveKind parse_move_kind(const std::string& s) {
  for (MoveKind k : all_move_kinds())
    if (to_string(k) == s) return k;
  throw DiagramError("unknown move kind '" + s + "'");
}

std::string describe(const MoveSite& s) {
  std::ostringstream out;
  out << to_string(s.kind) << ' ' << form_name(s.form);
  if (s.vertex >= 0) out << " at v" << s.vertex;
  out << " [";
  for (std::size_t i = 0; i < s.darts.size(); ++i) out << (i ? " " : "") << s.darts[i].edge << '.' << s.darts[i].end;
  out << "] p" << s.param;
  return out.str();
}

std::string to_string(Calculus c) {
  switch (c) {
    case Calculus::topological: return "topological";
    case Calculus::rigid: return "rigid";
    case Calculus::rigid_tight: return "rigid-tight";
  }
  return "?";
}

Calculus parse_calculus(const std::string& s) {
  for (Calculus c : {Calculus::topological, Calculus::rigid, Calculus::rigid_tight})
    if (to_string(c) == s) return c;
  throw DiagramError("unknown calculus '" + s + "'");
}

bool in_calculus(MoveKind k, Calculus c) {
  switch (k) {
    case MoveKind::TVT: return c == Calculus::topological;
    case MoveKind::RVT: return c != Calculus::topological;
    case MoveKind::bondR1:
    case MoveKind::bondR2:
    case MoveKind::bondR3:
    case MoveKind::mixedR2:
    case MoveKind::mixedR3: return c != Calculus::rigid_tight;
    default: return true;
  }
}

std::vector<MoveSite> find_moves(const BondedDiagram& d, MoveKind k, Calculus c) {
  return sites_of(d, k, c, faces(d));
}

BondedDiagram apply_move(const BondedDiagram& d, const MoveSite& site, Calculus c) {
  if (!in_calculus(site.kind, c)) throw DiagramError("move not in calculus");
  auto sites = find_moves(d, site.kind, c);
  if (std::find(sites.begin(), sites.end(), site) == sites.end()) throw DiagramError("site mismatch");
  return rewrite(d, site);
}

WalkResult random_walk(const BondedDiagram& d, const WalkOptions& opt) {
  std::vector<MoveKind> kinds = opt.kinds;
  if (kinds.empty())
    for (MoveKind k : all_move_kinds())
      if (k != MoveKind::enhancedCancel) kinds.push_back(k);
  std::erase_if(kinds, [&](MoveKind k) { return !in_calculus(k, opt.calculus); });

  WalkResult r{d, {}};
  std::mt19937_64 rng(opt.seed);
  const int cap = d.crossing_count() + opt.max_extra_crossings;
  for (int step = 0; step < opt.steps; ++step) {
    auto fs = faces(r.diagram);
    bool full = r.diagram.crossing_count() >= cap;
    std::map<std::pair<MoveKind, MoveForm>, std::vector<MoveSite>> groups;
    for (MoveKind k : kinds)
      for (MoveSite& s : sites_of(r.diagram, k, opt.calculus, fs))
        if (!(full && growing(s))) groups[{s.kind, s.form}].push_back(std::move(s));
    if (groups.empty()) break;
    auto g = std::next(groups.begin(), static_cast<long>(rng() % groups.size()));
    MoveSite site = g->second[rng() % g->second.size()];
    site.param = static_cast<int>(rng() % 2);
    r.diagram = rewrite(r.diagram, site);
    r.log.push_back({site, r.diagram.crossing_count()});
  }
  return r;
}

BondedDiagram standardize(const BondedDiagram& d) {
  BondedDiagram cur = d;
  for (int guard = 0; guard < 100000; ++guard) {
    int node = -1, best = 0;
    for (const BondPath& p : bond_paths(cur)) {
      int m = static_cast<int>(p.crossings.size());
      for (int i = 0; i < m; ++i) {
        if (crossing_class(cur, p.crossings[i]) != CrossingClass::bond_bond) continue;
        for (auto [dist, v] : {std::pair{i + 1, p.node0}, std::pair{m - i, p.node1}})
          if (node < 0 || dist < best || (dist == best && v < node)) node = v, best = dist;
      }
    }
    if (node < 0) return cur;
    cur = slide_off_bond(cur, node);
  }
  throw DiagramError("standardize did not terminate");
}

BondedDiagram tighten(const BondedDiagram& d) {
  BondedDiagram cur = d;
  for (int guard = 0; guard < 100000; ++guard) {
    auto paths = bond_paths(cur);
    auto it = std::find_if(paths.begin(), paths.end(), [](const BondPath& p) { return !p.crossings.empty(); });
    if (it == paths.end()) return cur;
    int m = static_cast<int>(it->crossings.size()), h = 0;
    for (int i = 0; i < m; ++i) h += i + 1 < m - i || (i + 1 == m - i && it->node0 < it->node1);
    // Node ids survive slides, so the plan for this bond can run in one go.
    int n0 = it->node0, n1 = it->node1;
    for (int i = 0; i < m; ++i) {
      int v = i < h ? n0 : n1;
      int b = node_roles(cur, v).bond;
      if (slide_in_crossing(cur, v, b) < 0) break;
      cur = slide_off_bond(cur, v);
    }
  }
  throw DiagramError("tighten did not terminate");
}

}  // namespace bondforge
