#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bondforge {

/// Raised for malformed input and for operations whose preconditions fail.
class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EdgeKind : std::uint8_t { link, bond };

/// Enhanced bond type. `plain` bonds carry no enhancement.
enum class BondSign : std::uint8_t { plain, attracting, repelling };

inline BondSign opposite(BondSign s) {
  switch (s) {
    case BondSign::attracting: return BondSign::repelling;
    case BondSign::repelling: return BondSign::attracting;
    default: return BondSign::plain;
  }
}

/// One end of an edge: `end` 0 is the tail, 1 the head (link edges run 0 -> 1).
struct HalfEdge {
  int edge = -1;
  int end = 0;
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Where an edge end is attached.
struct Attachment {
  int vertex = -1;
  int slot = -1;
  friend bool operator==(const Attachment&, const Attachment&) = default;
};

struct Edge {
  EdgeKind kind = EdgeKind::link;
  BondSign sign = BondSign::plain;
  std::array<Attachment, 2> ends{};
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class VertexKind : std::uint8_t { crossing, node };

/// A crossing has four slots in counterclockwise order; strands run through
/// opposite slots (0-2, 1-3). A node has three slots in counterclockwise
/// order: two link ends and one bond end.
struct Vertex {
  VertexKind kind = VertexKind::crossing;
  std::array<HalfEdge, 4> slots{};
  bool over02 = true;  // crossings only: the strand through slots 0,2 is over

  int degree() const { return kind == VertexKind::crossing ? 4 : 3; }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Planar (spherical) rotation-system code of a bonded link diagram.
/// Values are plain data; all operations return new diagrams.
struct BondedDiagram {
  std::vector<Edge> edges;
  std::vector<Vertex> vertices;
  int free_loops = 0;  // crossing- and node-free circles

  int add_edge(EdgeKind kind, BondSign sign = BondSign::plain);
  int add_vertex(VertexKind kind, bool over02 = true);
  /// Attaches the given edge end to (vertex, slot), updating both sides.
  void attach(int vertex, int slot, HalfEdge h);

  HalfEdge at(int vertex, int slot) const { return vertices[vertex].slots[slot]; }
  const Attachment& where(HalfEdge h) const { return edges[h.edge].ends[h.end]; }
  /// The half-edge at the other end of h's edge.
  static HalfEdge other(HalfEdge h) { return {h.edge, 1 - h.end}; }

  int bond_count() const;       // number of bonds (bond strands)
  int node_count() const;
  int crossing_count() const;
  bool is_classical() const;    // no bond edges and no nodes

  friend bool operator==(const BondedDiagram&, const BondedDiagram&) = default;
};

/// Slot roles at a node.
struct NodeRoles {
  int in = -1;    // incoming link slot
  int out = -1;   // outgoing link slot
  int bond = -1;  // bond slot
};
NodeRoles node_roles(const BondedDiagram& d, int vertex);

/// A bond seen as a strand: the chain of bond edges between two nodes,
/// with the crossings it passes through.
struct BondPath {
  int node0 = -1, node1 = -1;
  std::vector<int> edges;      // in order from node0 to node1
  std::vector<int> crossings;  // crossings passed, in order
  BondSign sign = BondSign::plain;
};
std::vector<BondPath> bond_paths(const BondedDiagram& d);

/// A face is a cyclic walk of darts; a dart is an edge traversed from
/// end `end` to the other end. Free loops contribute two empty faces each.
using Face = std::vector<HalfEdge>;
std::vector<Face> faces(const BondedDiagram& d);

/// Returns every violated invariant; empty means valid.
std::vector<std::string> validate(const BondedDiagram& d);
void require_valid(const BondedDiagram& d);

/// Link components as directed edge cycles, ordered by smallest edge id.
std::vector<std::vector<int>> link_components(const BondedDiagram& d);

/// Sum of crossing signs over link-link crossings.
int writhe(const BondedDiagram& d);
/// Sign of a link-link crossing (+1 or -1).
int crossing_sign(const BondedDiagram& d, int vertex);

enum class CrossingClass { link_link, bond_link, bond_bond };
CrossingClass crossing_class(const BondedDiagram& d, int vertex);
int count_crossings(const BondedDiagram& d, CrossingClass c);
/// Bond-bond crossings where both strands belong to one bond.
int count_bond_self_crossings(const BondedDiagram& d);
bool is_standard(const BondedDiagram& d);
bool is_tight(const BondedDiagram& d);

/// Removes every node: at node v the slot `detached[v]` is cut free and the
/// two remaining ends are fused. Strands left with a free end are discarded
/// together with their crossings. Returns the closed part (all edges become
/// link edges) and reports the number of discarded open arcs. `detached`
/// is indexed by vertex id; entries for crossings are ignored.
BondedDiagram fuse_nodes(const BondedDiagram& d, const std::vector<int>& detached,
                         int* open_arcs = nullptr);

/// Deletes every bond, leaving the oriented underlying link.
BondedDiagram underlying_link(const BondedDiagram& d);

/// Drops deleted edges/vertices (marked with kind-independent sentinels)
/// and renumbers. Used by rewriting code.
BondedDiagram compacted(const BondedDiagram& d, const std::vector<bool>& edge_alive,
                        const std::vector<bool>& vertex_alive);

/// Relabeling-invariant code: equal codes iff the diagrams are identical up
/// to renumbering of edges and vertices (and rotation of slot lists that
/// preserves the cyclic order at nodes).
std::string canonical_code(const BondedDiagram& d);
bool same_diagram(const BondedDiagram& x, const BondedDiagram& y);

enum class ExampleFamily { U, K };
/// U_n: an unknot with n tight bonds; K_n: a two-component unlink with n
/// parallel tight bonds between its components.
BondedDiagram gen_example(ExampleFamily family, int n, BondSign sign = BondSign::plain);

/// Text format (.bpd).
BondedDiagram parse_bpd(std::string_view text);
std::string to_bpd(const BondedDiagram& d);

/// Mirror image: every crossing flips over/under.
BondedDiagram mirror(const BondedDiagram& d);
/// Disjoint union.
BondedDiagram disjoint_union(const BondedDiagram& x, const BondedDiagram& y);

}  // namespace bondforge
