#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bondforge/diagram.hpp"
#include "bondforge/polyring.hpp"

namespace bondforge {

/// Invariant summary of a classical link. Equality ignores the diagnostic
/// crossing count.
struct Fingerprint {
  int component_count = 0;
  LaurentPoly jones = LaurentPoly(1);
  int crossing_count = 0;

  friend bool operator==(const Fingerprint& x, const Fingerprint& y) {
    return x.component_count == y.component_count && x.jones == y.jones;
  }
  std::string to_string() const;
};

/// Orders by serialized Jones, then component count.
bool operator<(const Fingerprint& x, const Fingerprint& y);
inline std::ostream& operator<<(std::ostream& out, const Fingerprint& f) { return out << f.to_string(); }

/// Fingerprint of a classical diagram. The Jones value is minimized (by its
/// string form) over all relative orientations of the components.
Fingerprint fingerprint(const BondedDiagram& classical);

/// Detached slot per vertex (entries for crossings are ignored).
using UnpluggingChoice = std::vector<int>;

struct UnplugResult {
  BondedDiagram link;
  int open_arcs = 0;
};

/// Detaches the chosen edge at every node and fuses the other two. With
/// `strict`, choosing a bond slot throws "strict forbids bond unplug".
UnplugResult unplug(const BondedDiagram& d, const UnpluggingChoice& choice, bool strict = false);

inline constexpr int kDefaultNodeBound = 10;

/// All full unpluggings (three choices per node), sorted.
std::vector<Fingerprint> unplug_full_set(const BondedDiagram& d, int node_bound = kDefaultNodeBound);
/// All strict unpluggings (link slots only), sorted.
std::vector<Fingerprint> unplug_strict_set(const BondedDiagram& d, int node_bound = kDefaultNodeBound);
/// Fingerprint of the underlying link.
Fingerprint unplug_bonded(const BondedDiagram& d);

/// Sorted and deduplicated copy of a fingerprint multiset.
std::vector<Fingerprint> as_set(std::vector<Fingerprint> multiset);

}  // namespace bondforge
