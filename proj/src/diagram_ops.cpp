#include <algorithm>
#include <map>
#include <sstream>

#include "bondforge/diagram.hpp"

namespace bondforge {

namespace {

// One edge traversed in a strand walk, entering the next vertex afterwards.
struct Step {
  int edge;
  int from_end;
};

}  // namespace

BondedDiagram fuse_nodes(const BondedDiagram& d, const std::vector<int>& detached, int* open_arcs) {
  const int ne = static_cast<int>(d.edges.size());

  // Continuation slot at (v, s); -1 when the strand ends there.
  auto continuation = [&](int v, int s) -> int {
    const Vertex& vx = d.vertices[v];
    if (vx.kind == VertexKind::crossing) return (s + 2) % 4;
    int cut = detached[v];
    if (s == cut) return -1;
    for (int t = 0; t < 3; ++t)
      if (t != s && t != cut) return t;
    return -1;
  };

  // Walk from `start` (edge, from_end) until closing up or hitting a free end.
  auto walk = [&](Step start, std::vector<Step>& steps) -> bool {
    Step cur = start;
    while (true) {
      steps.push_back(cur);
      Attachment at = d.edges[cur.edge].ends[1 - cur.from_end];
      int c = continuation(at.vertex, at.slot);
      if (c < 0) return false;
      HalfEdge h = d.vertices[at.vertex].slots[c];
      cur = Step{h.edge, h.end};
      if (cur.edge == start.edge && cur.from_end == start.from_end) return true;
      if (cur.edge == start.edge) return true;  // degenerate self-return
    }
  };

  std::vector<int> strand_of(ne, -1);
  std::vector<bool> strand_closed;
  std::vector<std::vector<int>> strand_edges;
  for (int e = 0; e < ne; ++e) {
    if (strand_of[e] >= 0) continue;
    int id = static_cast<int>(strand_closed.size());
    std::vector<Step> fwd;
    bool closed = walk({e, 0}, fwd);
    std::vector<int> members;
    for (const Step& s : fwd) members.push_back(s.edge);
    if (!closed) {
      std::vector<Step> back;
      walk({e, 1}, back);
      for (const Step& s : back) members.push_back(s.edge);
    }
    for (int m : members) strand_of[m] = id;
    strand_closed.push_back(closed);
    strand_edges.push_back(std::move(members));
  }
  if (open_arcs) *open_arcs = static_cast<int>(std::count(strand_closed.begin(), strand_closed.end(), false));

  BondedDiagram r;
  r.free_loops = d.free_loops;
  std::vector<int> vmap(d.vertices.size(), -1);
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    const Vertex& vx = d.vertices[v];
    if (vx.kind != VertexKind::crossing) continue;
    bool keep = true;
    for (int s = 0; s < 4; ++s) keep = keep && strand_closed[strand_of[vx.slots[s].edge]];
    if (keep) vmap[v] = r.add_vertex(VertexKind::crossing, vx.over02);
  }

  for (std::size_t sid = 0; sid < strand_closed.size(); ++sid) {
    if (!strand_closed[sid]) continue;
    // Orientation: follow the smallest link edge forward, else the smallest edge.
    int start = -1;
    for (int e : strand_edges[sid])
      if (d.edges[e].kind == EdgeKind::link && (start < 0 || e < start)) start = e;
    if (start < 0) start = *std::min_element(strand_edges[sid].begin(), strand_edges[sid].end());
    std::vector<Step> steps;
    walk({start, 0}, steps);
    struct Passage {
      int v, in_slot, out_slot;
    };
    std::vector<Passage> passages;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      Attachment at = d.edges[steps[i].edge].ends[1 - steps[i].from_end];
      if (vmap[at.vertex] < 0) continue;
      const Step& nxt = steps[(i + 1) % steps.size()];
      passages.push_back({vmap[at.vertex], at.slot, d.edges[nxt.edge].ends[nxt.from_end].slot});
    }
    if (passages.empty()) {
      ++r.free_loops;
      continue;
    }
    for (std::size_t i = 0; i < passages.size(); ++i) {
      const Passage& p = passages[i];
      const Passage& q = passages[(i + 1) % passages.size()];
      int e = r.add_edge(EdgeKind::link);
      r.attach(p.v, p.out_slot, {e, 0});
      r.attach(q.v, q.in_slot, {e, 1});
    }
  }
  return r;
}

BondedDiagram underlying_link(const BondedDiagram& d) {
  std::vector<int> detached(d.vertices.size(), -1);
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
    if (d.vertices[v].kind == VertexKind::node) detached[v] = node_roles(d, v).bond;
  if (d.is_classical()) return d;
  return fuse_nodes(d, detached);
}

// ---------------------------------------------------------------------------
// Canonical code

namespace {

std::string component_code(const BondedDiagram& d, const std::vector<int>& verts, int root, int root_slot) {
  std::map<int, int> vid, eid;
  std::map<int, int> entry;
  std::vector<int> order{root};
  vid[root] = 0;
  entry[root] = root_slot;
  std::ostringstream out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    const Vertex& vx = d.vertices[v];
    int deg = vx.degree();
    int s0 = entry[v];
    out << (vx.kind == VertexKind::crossing ? 'X' : 'V');
    if (vx.kind == VertexKind::crossing) out << (((s0 % 2 == 0) == vx.over02) ? 'o' : 'u');
    for (int k = 0; k < deg; ++k) {
      HalfEdge h = vx.slots[(s0 + k) % deg];
      auto [it, fresh] = eid.try_emplace(h.edge, static_cast<int>(eid.size()));
      const Edge& e = d.edges[h.edge];
      out << ' ' << it->second << '.' << h.end;
      if (fresh) {
        out << (e.kind == EdgeKind::link ? 'l' : 'b') << static_cast<int>(e.sign);
        Attachment far = e.ends[1 - h.end];
        if (!vid.count(far.vertex)) {
          vid[far.vertex] = static_cast<int>(order.size());
          entry[far.vertex] = far.slot;
          order.push_back(far.vertex);
        }
      }
    }
    out << ';';
  }
  (void)verts;
  return out.str();
}

}  // namespace

std::string canonical_code(const BondedDiagram& d) {
  const int nv = static_cast<int>(d.vertices.size());
  std::vector<int> comp(nv, -1);
  std::vector<std::vector<int>> comps;
  for (int v = 0; v < nv; ++v) {
    if (comp[v] >= 0) continue;
    std::vector<int> members{v};
    comp[v] = static_cast<int>(comps.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Vertex& vx = d.vertices[members[i]];
      for (int s = 0; s < vx.degree(); ++s) {
        HalfEdge h = vx.slots[s];
        int w = d.edges[h.edge].ends[1 - h.end].vertex;
        if (w >= 0 && comp[w] < 0) comp[w] = comp[v], members.push_back(w);
      }
    }
    comps.push_back(std::move(members));
  }
  std::vector<std::string> codes;
  for (const auto& members : comps) {
    std::string best;
    for (int v : members)
      for (int s = 0; s < d.vertices[v].degree(); ++s) {
        std::string c = component_code(d, members, v, s);
        if (best.empty() || c < best) best = std::move(c);
      }
    codes.push_back(std::move(best));
  }
  std::sort(codes.begin(), codes.end());
  std::ostringstream out;
  for (const auto& c : codes) out << '[' << c << ']';
  out << "O" << d.free_loops;
  return out.str();
}

bool same_diagram(const BondedDiagram& x, const BondedDiagram& y) {
  return canonical_code(x) == canonical_code(y);
}

// ---------------------------------------------------------------------------
// Example families

namespace {

// Adds a tight bond between link edges `left` (oriented downward, bond to
// its east) and `right` (bond to its west). Each edge is split at a new node;
// returns the two continuation edges below the nodes.
std::pair<int, int> add_rung(BondedDiagram& d, int left, bool right_down, int right, BondSign sign) {
  int bond = d.add_edge(EdgeKind::bond, sign);
  int n1 = d.add_vertex(VertexKind::node);
  int n2 = d.add_vertex(VertexKind::node);
  int left_below = d.add_edge(EdgeKind::link);
  int right_next = d.add_edge(EdgeKind::link);
  // Left strand runs downward: incoming from north, outgoing south, bond east.
  // CCW from north: north, (west), south, east.
  d.attach(n1, 0, {left, 1});
  d.attach(n1, 1, {left_below, 0});
  d.attach(n1, 2, {bond, 0});
  if (right_down) {
    // Downward strand with bond to the west: CCW north, west, south.
    d.attach(n2, 0, {right, 1});
    d.attach(n2, 1, {bond, 1});
    d.attach(n2, 2, {right_next, 0});
  } else {
    // Upward strand with bond to the west: CCW south(in), east?  The strand
    // comes in from the south and leaves north: CCW south, (east), north, west.
    d.attach(n2, 0, {right, 1});
    d.attach(n2, 1, {right_next, 0});
    d.attach(n2, 2, {bond, 1});
  }
  return {left_below, right_next};
}

}  // namespace

BondedDiagram gen_example(ExampleFamily family, int n, BondSign sign) {
  if (n < 0) throw DiagramError("example size must be non-negative");
  BondedDiagram d;
  if (family == ExampleFamily::U) {
    if (n == 0) {
      d.free_loops = 1;
      return d;
    }
    // A circle drawn as a tall oval: the left side runs down, the right side
    // runs up (counterclockwise). Rungs stack from top to bottom on the
    // left and bottom to top on the right.
    int first_left = d.add_edge(EdgeKind::link);
    int left = first_left;
    std::vector<std::pair<int, int>> rung_nodes;
    // Right side edges are created top to bottom and then chained upward.
    std::vector<int> right_in(n);
    int right_top = -1;
    // Build by rungs: the right strand at rung k flows upward from rung k+1.
    int bottom_edge = -1;
    std::vector<int> right_out(n);
    for (int k = 0; k < n; ++k) {
      right_in[k] = d.add_edge(EdgeKind::link);
      auto [below, up] = add_rung(d, left, false, right_in[k], sign);
      left = below;
      right_out[k] = up;
    }
    bottom_edge = left;
    (void)right_top;
    (void)rung_nodes;
    // Right side flows upward: bottom turn feeds rung n-1, rung k feeds rung k-1,
    // and rung 0 feeds the top turn which is `first_left`.
    // Merge edges: right_out[k] (leaving rung k upward) is the same edge as
    // right_in[k-1]; bottom_edge is the same edge as right_in[n-1];
    // right_out[0] is the same edge as first_left.
    auto merge = [&](int keep, int drop) {
      // `drop` has its tail attached; move it onto `keep`'s tail.
      Attachment tail = d.edges[drop].ends[0];
      d.attach(tail.vertex, tail.slot, {keep, 0});
      d.edges[drop].ends = {};
    };
    merge(right_in[n - 1], bottom_edge);
    for (int k = n - 1; k >= 1; --k) merge(right_in[k - 1], right_out[k]);
    merge(first_left, right_out[0]);
    std::vector<bool> alive(d.edges.size(), true);
    alive[bottom_edge] = false;
    for (int k = 0; k < n; ++k) alive[right_out[k]] = false;
    return compacted(d, alive, std::vector<bool>(d.vertices.size(), true));
  }

  // K_n: left circle with its right side running down, right circle with its
  // left side running down; rungs between them.
  if (n == 0) {
    d.free_loops = 2;
    return d;
  }
  int first_left = d.add_edge(EdgeKind::link);
  int first_right = d.add_edge(EdgeKind::link);
  int left = first_left, right = first_right;
  for (int k = 0; k < n; ++k) {
    auto [lb, rb] = add_rung(d, left, true, right, sign);
    left = lb;
    right = rb;
  }
  // Close each circle around its outer side.
  auto close = [&](int first, int last) {
    Attachment tail = d.edges[last].ends[0];
    d.attach(tail.vertex, tail.slot, {first, 0});
    return last;
  };
  int dead1 = close(first_left, left);
  int dead2 = close(first_right, right);
  std::vector<bool> alive(d.edges.size(), true);
  alive[dead1] = alive[dead2] = false;
  return compacted(d, alive, std::vector<bool>(d.vertices.size(), true));
}

}  // namespace bondforge
