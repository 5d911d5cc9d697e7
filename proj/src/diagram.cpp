#include "bondforge/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace bondforge {

int BondedDiagram::add_edge(EdgeKind kind, BondSign sign) {
  edges.push_back(Edge{kind, kind == EdgeKind::bond ? sign : BondSign::plain, {}});
  return static_cast<int>(edges.size()) - 1;
}

int BondedDiagram::add_vertex(VertexKind kind, bool over02) {
  Vertex v;
  v.kind = kind;
  v.over02 = over02;
  vertices.push_back(v);
  return static_cast<int>(vertices.size()) - 1;
}

void BondedDiagram::attach(int vertex, int slot, HalfEdge h) {
  vertices[vertex].slots[slot] = h;
  edges[h.edge].ends[h.end] = Attachment{vertex, slot};
}

int BondedDiagram::node_count() const {
  return static_cast<int>(std::count_if(vertices.begin(), vertices.end(),
                                        [](const Vertex& v) { return v.kind == VertexKind::node; }));
}

int BondedDiagram::crossing_count() const {
  return static_cast<int>(vertices.size()) - node_count();
}

int BondedDiagram::bond_count() const { return node_count() / 2; }

bool BondedDiagram::is_classical() const {
  return node_count() == 0 &&
         std::none_of(edges.begin(), edges.end(), [](const Edge& e) { return e.kind == EdgeKind::bond; });
}

NodeRoles node_roles(const BondedDiagram& d, int vertex) {
  NodeRoles r;
  const Vertex& v = d.vertices[vertex];
  for (int s = 0; s < 3; ++s) {
    HalfEdge h = v.slots[s];
    if (h.edge < 0) continue;
    if (d.edges[h.edge].kind == EdgeKind::bond) r.bond = s;
    else if (h.end == 1) r.in = s;
    else r.out = s;
  }
  return r;
}

std::vector<BondPath> bond_paths(const BondedDiagram& d) {
  std::vector<BondPath> paths;
  std::vector<bool> used(d.edges.size(), false);
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    if (d.vertices[v].kind != VertexKind::node) continue;
    NodeRoles r = node_roles(d, v);
    if (r.bond < 0) continue;
    HalfEdge h = d.at(v, r.bond);
    if (used[h.edge]) continue;
    BondPath p;
    p.node0 = v;
    p.sign = d.edges[h.edge].sign;
    while (true) {
      used[h.edge] = true;
      p.edges.push_back(h.edge);
      HalfEdge far = BondedDiagram::other(h);
      Attachment at = d.where(far);
      if (at.vertex < 0) break;
      const Vertex& w = d.vertices[at.vertex];
      if (w.kind == VertexKind::node) {
        p.node1 = at.vertex;
        break;
      }
      p.crossings.push_back(at.vertex);
      h = w.slots[(at.slot + 2) % 4];
      if (h.edge < 0 || d.edges[h.edge].kind != EdgeKind::bond || used[h.edge]) break;
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

std::vector<Face> faces(const BondedDiagram& d) {
  std::vector<Face> result;
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    for (int dir = 0; dir < 2; ++dir) {
      if (seen.count({e, dir})) continue;
      Face f;
      HalfEdge dart{e, dir};  // traverse from end `dir` to the other end
      while (!seen.count({dart.edge, dart.end})) {
        seen.insert({dart.edge, dart.end});
        f.push_back(dart);
        Attachment at = d.edges[dart.edge].ends[1 - dart.end];
        if (at.vertex < 0) break;
        int deg = d.vertices[at.vertex].degree();
        HalfEdge next = d.vertices[at.vertex].slots[(at.slot + deg - 1) % deg];
        dart = next;  // leaving the vertex through `next`
      }
      result.push_back(std::move(f));
    }
  }
  for (int i = 0; i < 2 * d.free_loops; ++i) result.emplace_back();
  return result;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

std::vector<std::string> validate(const BondedDiagram& d) {
  std::vector<std::string> issues;
  const int nv = static_cast<int>(d.vertices.size());
  const int ne = static_cast<int>(d.edges.size());
  auto tag = [](const std::string& s) { return s; };

  // Attachment consistency.
  bool wiring_ok = true;
  for (int e = 0; e < ne; ++e) {
    for (int end = 0; end < 2; ++end) {
      Attachment at = d.edges[e].ends[end];
      if (at.vertex < 0 || at.vertex >= nv || at.slot < 0 || at.slot >= d.vertices[at.vertex].degree() ||
          !(d.vertices[at.vertex].slots[at.slot] == HalfEdge{e, end})) {
        issues.push_back(tag("edge " + std::to_string(e) + "." + std::to_string(end) +
                             " is not attached exactly once"));
        wiring_ok = false;
      }
    }
    if (d.edges[e].kind == EdgeKind::link && d.edges[e].sign != BondSign::plain)
      issues.push_back("link edge " + std::to_string(e) + " carries a bond sign");
  }
  for (int v = 0; v < nv; ++v) {
    const Vertex& vx = d.vertices[v];
    for (int s = 0; s < vx.degree(); ++s) {
      HalfEdge h = vx.slots[s];
      if (h.edge < 0 || h.edge >= ne || !(d.where(h) == Attachment{v, s})) {
        issues.push_back("vertex " + std::to_string(v) + " slot " + std::to_string(s) + " is dangling");
        wiring_ok = false;
      }
    }
  }
  if (!wiring_ok) return issues;

  for (int v = 0; v < nv; ++v) {
    const Vertex& vx = d.vertices[v];
    if (vx.kind == VertexKind::crossing) {
      for (int s = 0; s < 2; ++s) {
        HalfEdge p = vx.slots[s], q = vx.slots[s + 2];
        EdgeKind kp = d.edges[p.edge].kind, kq = d.edges[q.edge].kind;
        if (kp != kq) {
          issues.push_back("bond endpoint not at Node (crossing " + std::to_string(v) + ")");
        } else if (kp == EdgeKind::link && p.end == q.end) {
          issues.push_back("inconsistent link orientation at crossing " + std::to_string(v));
        }
      }
    } else {
      int bonds = 0, ins = 0, outs = 0;
      for (int s = 0; s < 3; ++s) {
        HalfEdge h = vx.slots[s];
        if (d.edges[h.edge].kind == EdgeKind::bond) ++bonds;
        else if (h.end == 1) ++ins;
        else ++outs;
      }
      if (bonds != 1) issues.push_back("node " + std::to_string(v) + " must carry exactly one bond");
      if (ins != 1 || outs != 1)
        issues.push_back("node " + std::to_string(v) + " link edges are not oriented in->out");
    }
  }

  for (const BondPath& p : bond_paths(d)) {
    if (p.node1 < 0) {
      if (issues.empty() || issues.back().find("bond endpoint") == std::string::npos)
        issues.push_back("bond endpoint not at Node");
      continue;
    }
    if (p.node0 == p.node1) issues.push_back("bond joins a node to itself");
    for (int e : p.edges)
      if (d.edges[e].sign != p.sign) issues.push_back("bond carries mixed enhanced signs");
  }

  // Euler characteristic per connected component.
  if (nv > 0) {
    UnionFind uf(nv);
    for (const Edge& e : d.edges) uf.unite(e.ends[0].vertex, e.ends[1].vertex);
    std::map<int, long> chi;
    for (int v = 0; v < nv; ++v) chi[uf.find(v)] += 1;
    for (const Edge& e : d.edges) chi[uf.find(e.ends[0].vertex)] -= 1;
    for (const Face& f : faces(d))
      if (!f.empty()) chi[uf.find(d.edges[f.front().edge].ends[f.front().end].vertex)] += 1;
    for (const auto& [root, x] : chi)
      if (x != 2) issues.push_back("rotation system is not planar (V-E+F=" + std::to_string(x) + ")");
  }
  return issues;
}

void require_valid(const BondedDiagram& d) {
  auto issues = validate(d);
  if (!issues.empty()) throw DiagramError("invalid diagram: " + issues.front());
}

std::vector<std::vector<int>> link_components(const BondedDiagram& d) {
  std::vector<std::vector<int>> comps;
  std::vector<bool> seen(d.edges.size(), false);
  for (int e0 = 0; e0 < static_cast<int>(d.edges.size()); ++e0) {
    if (seen[e0] || d.edges[e0].kind != EdgeKind::link) continue;
    std::vector<int> cycle;
    int e = e0;
    while (!seen[e]) {
      seen[e] = true;
      cycle.push_back(e);
      Attachment head = d.edges[e].ends[1];
      if (head.vertex < 0) break;
      const Vertex& v = d.vertices[head.vertex];
      int next_slot = v.kind == VertexKind::crossing ? (head.slot + 2) % 4 : node_roles(d, head.vertex).out;
      if (next_slot < 0) break;
      e = v.slots[next_slot].edge;
    }
    comps.push_back(std::move(cycle));
  }
  return comps;
}

int crossing_sign(const BondedDiagram& d, int vertex) {
  const Vertex& v = d.vertices[vertex];
  int over = v.over02 ? 0 : 1;
  int under = 1 - over;
  int over_exit = v.slots[over].end == 0 ? over : over + 2;
  int under_exit = v.slots[under].end == 0 ? under : under + 2;
  return under_exit == (over_exit + 1) % 4 ? 1 : -1;
}

CrossingClass crossing_class(const BondedDiagram& d, int vertex) {
  const Vertex& v = d.vertices[vertex];
  int bonds = (d.edges[v.slots[0].edge].kind == EdgeKind::bond) + (d.edges[v.slots[1].edge].kind == EdgeKind::bond);
  return bonds == 0 ? CrossingClass::link_link : bonds == 1 ? CrossingClass::bond_link : CrossingClass::bond_bond;
}

int writhe(const BondedDiagram& d) {
  int w = 0;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
    if (d.vertices[v].kind == VertexKind::crossing && crossing_class(d, v) == CrossingClass::link_link)
      w += crossing_sign(d, v);
  return w;
}

int count_crossings(const BondedDiagram& d, CrossingClass c) {
  int n = 0;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
    if (d.vertices[v].kind == VertexKind::crossing && crossing_class(d, v) == c) ++n;
  return n;
}

int count_bond_self_crossings(const BondedDiagram& d) {
  int n = 0;
  for (const BondPath& p : bond_paths(d)) {
    std::map<int, int> hits;
    for (int x : p.crossings) ++hits[x];
    for (const auto& [x, k] : hits)
      if (k == 2) ++n;
  }
  return n;
}

bool is_standard(const BondedDiagram& d) { return count_crossings(d, CrossingClass::bond_bond) == 0; }

bool is_tight(const BondedDiagram& d) {
  return is_standard(d) && count_crossings(d, CrossingClass::bond_link) == 0;
}

BondedDiagram mirror(const BondedDiagram& d) {
  BondedDiagram m = d;
  for (Vertex& v : m.vertices)
    if (v.kind == VertexKind::crossing) v.over02 = !v.over02;
  return m;
}

BondedDiagram disjoint_union(const BondedDiagram& x, const BondedDiagram& y) {
  BondedDiagram r = x;
  const int eoff = static_cast<int>(x.edges.size());
  const int voff = static_cast<int>(x.vertices.size());
  for (Edge e : y.edges) {
    for (auto& at : e.ends) at.vertex += voff;
    r.edges.push_back(e);
  }
  for (Vertex v : y.vertices) {
    for (int s = 0; s < v.degree(); ++s) v.slots[s].edge += eoff;
    r.vertices.push_back(v);
  }
  r.free_loops += y.free_loops;
  return r;
}

BondedDiagram compacted(const BondedDiagram& d, const std::vector<bool>& edge_alive,
                        const std::vector<bool>& vertex_alive) {
  std::vector<int> emap(d.edges.size(), -1), vmap(d.vertices.size(), -1);
  BondedDiagram r;
  r.free_loops = d.free_loops;
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (edge_alive[e]) emap[e] = static_cast<int>(r.edges.size()), r.edges.push_back(d.edges[e]);
  for (std::size_t v = 0; v < d.vertices.size(); ++v)
    if (vertex_alive[v]) vmap[v] = static_cast<int>(r.vertices.size()), r.vertices.push_back(d.vertices[v]);
  for (Edge& e : r.edges)
    for (auto& at : e.ends) at.vertex = vmap[at.vertex];
  for (Vertex& v : r.vertices)
    for (int s = 0; s < v.degree(); ++s) v.slots[s].edge = emap[v.slots[s].edge];
  return r;
}

}  // namespace bondforge
