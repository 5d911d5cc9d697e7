#pragma once

#include <array>
#include <vector>

#include "bondforge/diagram.hpp"
#include "bondforge/polyring.hpp"

namespace bondforge {

/// Planar-diagram code of a classical link: each crossing lists the arcs
/// at its four counterclockwise slots. `outgoing[s]` records the link
/// orientation at slot s. Arcs are arbitrary integer labels, each used at
/// exactly two slots; crossing-free components are counted in free_loops.
struct PdCode {
  struct Crossing {
    std::array<int, 4> arc{};
    bool over02 = true;
    std::array<bool, 4> outgoing{};
  };
  std::vector<Crossing> crossings;
  int free_loops = 0;
};

PdCode to_pd(const BondedDiagram& classical);

/// Sign of a PD crossing from its orientation flags.
int pd_crossing_sign(const PdCode::Crossing& c);
int pd_writhe(const PdCode& pd);
int pd_component_count(const PdCode& pd);

/// Kauffman bracket normalized so that the unknot evaluates to 1 (the empty
/// diagram also evaluates to 1). Recursive smoothing with memoization.
LaurentPoly bracket(const PdCode& pd);
/// Plain enumeration of all 2^c states; kept as a reference evaluator.
LaurentPoly bracket_state_sum(const PdCode& pd);

/// Bracket of a diagram without bonds; throws "not classical" otherwise.
LaurentPoly kauffman_bracket(const BondedDiagram& d);

/// (-A^3)^(-writhe) <d> for an oriented classical diagram.
LaurentPoly normalized_jones(const BondedDiagram& d);
LaurentPoly normalized_jones(const PdCode& pd);

/// Bonded bracket of a tight diagram: every bond is deleted (weight a) or
/// replaced by a positive or a negative crossing (weight b each), and the
/// resulting classical diagrams are evaluated by the Kauffman bracket.
/// Throws "tighten first" on non-tight input. Enhanced signs are ignored.
LaurentPoly bonded_bracket(const BondedDiagram& tight);

/// How a single bond is resolved inside the bonded bracket.
enum class BondResolution { remove, positive, negative };

/// The classical diagram obtained by resolving each bond of a tight diagram
/// as given (indexed like bond_paths(d)).
PdCode resolve_bonds(const BondedDiagram& tight, const std::vector<BondResolution>& choice);

}  // namespace bondforge
