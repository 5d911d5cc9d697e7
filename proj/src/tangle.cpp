#include "bondforge/tangle.hpp"

#include <algorithm>
#include <sstream>

namespace bondforge {

TwoTangle twist_tangle(int k) {
  TwoTangle t;
  t.name = k == 0 ? "identity" : "twist:" + std::to_string(k);
  BondedDiagram& f = t.fragment;
  if (k == 0) {
    int left = f.add_edge(EdgeKind::link), right = f.add_edge(EdgeKind::link);
    t.boundary = {HalfEdge{left, 0}, HalfEdge{right, 0}, HalfEdge{left, 1}, HalfEdge{right, 1}};
    return t;
  }
  // Crossing slots: upper-left, lower-left, lower-right, upper-right.
  int n = std::abs(k);
  int upper = f.add_edge(EdgeKind::link), lower = f.add_edge(EdgeKind::link);
  t.boundary[NW] = {upper, 0};
  t.boundary[SW] = {lower, 0};
  for (int j = 0; j < n; ++j) {
    int v = f.add_vertex(VertexKind::crossing, k > 0);
    f.attach(v, 0, {upper, 1});
    f.attach(v, 1, {lower, 1});
    upper = f.add_edge(EdgeKind::link);
    lower = f.add_edge(EdgeKind::link);
    f.attach(v, 3, {upper, 0});
    f.attach(v, 2, {lower, 0});
  }
  t.boundary[NE] = {upper, 1};
  t.boundary[SE] = {lower, 1};
  return t;
}

TwoTangle builtin_tangle(const std::string& name) {
  if (name == "identity") return twist_tangle(0);
  if (name == "crossing+") {
    auto t = twist_tangle(1);
    t.name = name;
    return t;
  }
  if (name == "crossing-") {
    auto t = twist_tangle(-1);
    t.name = name;
    return t;
  }
  if (name.rfind("twist:", 0) == 0) {
    try {
      std::size_t used = 0;
      int k = std::stoi(name.substr(6), &used);
      if (used == name.size() - 6) return twist_tangle(k);
    } catch (const std::exception&) {
    }
  }
  throw DiagramError("unknown tangle '" + name + "'");
}

std::vector<TwoTangle> parse_tangle_family(const std::string& spec) {
  std::vector<TwoTangle> out;
  std::istringstream in(spec);
  for (std::string item; std::getline(in, item, ',');) {
    auto dots = item.find("..");
    if (item.rfind("twist:", 0) == 0 && dots != std::string::npos) {
      int lo, hi;
      try {
        lo = std::stoi(item.substr(6, dots - 6));
        hi = std::stoi(item.substr(dots + 2));
      } catch (const std::exception&) {
        throw DiagramError("bad tangle range '" + item + "'");
      }
      if (lo > hi) throw DiagramError("empty tangle range '" + item + "'");
      for (int k = lo; k <= hi; ++k) out.push_back(twist_tangle(k));
    } else {
      out.push_back(builtin_tangle(item));
    }
  }
  if (out.empty()) throw DiagramError("empty tangle family");
  return out;
}

BondedDiagram insert_tangles(const BondedDiagram& d, const TangleAssignment& asg) {
  if (!is_standard(d)) throw DiagramError("standardize first");
  auto paths = bond_paths(d);
  if (asg.size() != paths.size()) throw DiagramError("tangle assignment must cover every bond");

  // Scratch diagram: edge ends that must be glued meet at two-slot nodes
  // which fuse_nodes then removes.
  BondedDiagram p;
  p.free_loops = d.free_loops;
  std::vector<int> detached;
  std::vector<int> lmap(d.edges.size(), -1);
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (d.edges[e].kind == EdgeKind::link) lmap[e] = p.add_edge(EdgeKind::link);
  auto mapped = [&](HalfEdge h) { return HalfEdge{lmap[h.edge], h.end}; };
  auto add_vertex = [&](VertexKind kind, bool over02) {
    detached.push_back(kind == VertexKind::node ? 2 : 0);
    return p.add_vertex(kind, over02);
  };
  auto glue = [&](HalfEdge x, HalfEdge y) {
    int j = add_vertex(VertexKind::node, true);
    p.attach(j, 0, x);
    p.attach(j, 1, y);
  };

  for (const Vertex& v : d.vertices) {
    if (v.kind != VertexKind::crossing) continue;
    bool classical = true;
    for (int s = 0; s < 4; ++s) classical = classical && d.edges[v.slots[s].edge].kind == EdgeKind::link;
    if (!classical) continue;
    int x = add_vertex(VertexKind::crossing, v.over02);
    for (int s = 0; s < 4; ++s) p.attach(x, s, mapped(v.slots[s]));
  }

  for (std::size_t k = 0; k < paths.size(); ++k) {
    const BondPath& path = paths[k];
    const TwoTangle& t = asg[k];
    int b0 = node_roles(d, path.node0).bond, b1 = node_roles(d, path.node1).bond;

    std::vector<int> tmap(t.fragment.edges.size());
    for (auto& e : tmap) e = p.add_edge(EdgeKind::link);
    auto tangle_end = [&](HalfEdge h) { return HalfEdge{tmap[h.edge], h.end}; };
    for (const Vertex& v : t.fragment.vertices) {
      int x = add_vertex(VertexKind::crossing, v.over02);
      for (int s = 0; s < 4; ++s) p.attach(x, s, tangle_end(v.slots[s]));
    }

    int upper = p.add_edge(EdgeKind::link), lower = p.add_edge(EdgeKind::link);
    glue(mapped(d.at(path.node0, (b0 + 1) % 3)), tangle_end(t.boundary[NW]));
    glue(mapped(d.at(path.node0, (b0 + 2) % 3)), tangle_end(t.boundary[SW]));
    glue(tangle_end(t.boundary[NE]), {upper, 0});
    glue(tangle_end(t.boundary[SE]), {lower, 0});

    for (std::size_t i = 0; i < path.crossings.size(); ++i) {
      int xv = path.crossings[i];
      const Vertex& x = d.vertices[xv];
      const Edge& arriving = d.edges[path.edges[i]];
      int s_in = arriving.ends[0].vertex == xv ? arriving.ends[0].slot : arriving.ends[1].slot;
      bool band_over = (s_in % 2 == 0) == x.over02;
      int mid = p.add_edge(EdgeKind::link);
      int next_upper = p.add_edge(EdgeKind::link), next_lower = p.add_edge(EdgeKind::link);
      // Seen walking from the first node, the link strand passes the lower
      // band edge first.
      int xl = add_vertex(VertexKind::crossing, band_over);
      p.attach(xl, 0, {lower, 1});
      p.attach(xl, 1, mapped(x.slots[(s_in + 1) % 4]));
      p.attach(xl, 2, {next_lower, 0});
      p.attach(xl, 3, {mid, 0});
      int xu = add_vertex(VertexKind::crossing, band_over);
      p.attach(xu, 0, {upper, 1});
      p.attach(xu, 1, {mid, 1});
      p.attach(xu, 2, {next_upper, 0});
      p.attach(xu, 3, mapped(x.slots[(s_in + 3) % 4]));
      upper = next_upper;
      lower = next_lower;
    }
    glue({upper, 1}, mapped(d.at(path.node1, (b1 + 2) % 3)));
    glue({lower, 1}, mapped(d.at(path.node1, (b1 + 1) % 3)));
  }

  int open = 0;
  BondedDiagram out = fuse_nodes(p, detached, &open);
  if (open != 0) throw DiagramError("tangle insertion left open strands");
  return out;
}

std::map<std::vector<int>, Fingerprint> tangle_invariant_set(const BondedDiagram& d,
                                                             const std::vector<TwoTangle>& family,
                                                             long max_assignments) {
  if (family.empty()) throw DiagramError("empty tangle family");
  std::size_t k = bond_paths(d).size();
  long total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= static_cast<long>(family.size());
    if (total > max_assignments)
      throw DiagramError("tangle assignment bound exceeded (" + std::to_string(max_assignments) + ")");
  }
  std::map<std::vector<int>, Fingerprint> out;
  std::vector<int> idx(k, 0);
  TangleAssignment asg(k, family[0]);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) asg[i] = family[idx[i]];
    out[idx] = fingerprint(insert_tangles(d, asg));
    std::size_t i = 0;
    while (i < k && ++idx[i] == static_cast<int>(family.size())) idx[i++] = 0;
    if (i == k) break;
  }
  return out;
}

std::vector<Fingerprint> tangle_multiset(const std::map<std::vector<int>, Fingerprint>& set) {
  std::vector<Fingerprint> out;
  for (const auto& [key, f] : set) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bondforge
