#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bondforge/diagram.hpp"

namespace bondforge {

enum class MoveKind : std::uint8_t {
  R1, R2, R3,
  bondR1, bondR2, bondR3,
  mixedR2, mixedR3,
  VS, TVT, RVT,
  nodeSlide, enhancedCancel,
};
const std::vector<MoveKind>& all_move_kinds();
std::string to_string(MoveKind k);
MoveKind parse_move_kind(const std::string& s);

/// How a site rewrites the diagram.
enum class MoveForm : std::uint8_t {
  create,    // adds crossings (R1, R2, TVT, RVT) or a bond pair (enhancedCancel)
  remove,    // the inverse of create
  swap,      // R3 and nodeSlide: self-inverse rearrangements
  slide_in,  // VS: one crossing next to a node becomes two on its other edges
  slide_out, // VS: the reverse
  slide_h,   // VS across a whole tight bond with both of its nodes
};

/// A matched location. `darts` are the face darts or edge ends the move
/// reads; `vertex` anchors node-centred moves. `param` picks over/under
/// (or the twist direction) for creating forms and is not part of the match.
struct MoveSite {
  MoveKind kind = MoveKind::R1;
  MoveForm form = MoveForm::create;
  std::vector<HalfEdge> darts;
  int vertex = -1;
  int param = 0;

  /// Equality ignores `param`.
  friend bool operator==(const MoveSite& a, const MoveSite& b) {
    return a.kind == b.kind && a.form == b.form && a.darts == b.darts && a.vertex == b.vertex;
  }
};
std::string describe(const MoveSite& s);

enum class Calculus : std::uint8_t {
  topological,  // flexible vertices: TVT allowed, RVT not
  rigid,        // rigid vertices: RVT allowed, TVT not
  rigid_tight,  // rigid, and every move keeps bonds free of crossings
};
std::string to_string(Calculus c);
Calculus parse_calculus(const std::string& s);

/// Whether a move kind belongs to the calculus at all.
bool in_calculus(MoveKind k, Calculus c);

/// Every site of kind `k` in `d`. Under rigid_tight only the sites that keep
/// the diagram tight are listed.
std::vector<MoveSite> find_moves(const BondedDiagram& d, MoveKind k,
                                 Calculus c = Calculus::topological);

/// Applies a site found on this very diagram. Throws "site mismatch" for a
/// stale site and "move not in calculus" for a kind the calculus forbids.
BondedDiagram apply_move(const BondedDiagram& d, const MoveSite& site,
                         Calculus c = Calculus::topological);

struct WalkOptions {
  Calculus calculus = Calculus::topological;
  int steps = 100;
  std::uint64_t seed = 0;
  std::vector<MoveKind> kinds;  // empty: every kind of the calculus except enhancedCancel
  int max_extra_crossings = 10; // creating forms stop once this many crossings were added
};
struct WalkStep {
  MoveSite site;
  int crossings_after = 0;
};
struct WalkResult {
  BondedDiagram diagram;
  std::vector<WalkStep> log;
};

/// Seeded random sequence of applicable moves. Each step picks a move kind
/// and form uniformly among those with sites, then a site uniformly.
WalkResult random_walk(const BondedDiagram& d, const WalkOptions& opt);

/// Slides bond-bond crossings off their bonds at a node until none remain.
BondedDiagram standardize(const BondedDiagram& d);
/// Slides every crossing off its bond at the nearest node (ties: smaller
/// vertex id) until every bond is a single edge.
BondedDiagram tighten(const BondedDiagram& d);

}  // namespace bondforge
