#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bondforge/diagram.hpp"
#include "bondforge/unplug.hpp"

namespace bondforge {

/// A classical 2-tangle: a diagram fragment whose four free edge ends are
/// the boundary points. `boundary` lists them as NW, NE, SW, SE.
struct TwoTangle {
  std::string name;
  BondedDiagram fragment;
  std::array<HalfEdge, 4> boundary{};
};

enum TangleCorner { NW = 0, NE = 1, SW = 2, SE = 3 };

/// identity, crossing+, crossing-, or twist:<k> (|k| crossings of sign k
/// stacked along the band).
TwoTangle builtin_tangle(const std::string& name);
TwoTangle twist_tangle(int k);

/// Parses "identity,crossing+,crossing-" or "twist:-2..2".
std::vector<TwoTangle> parse_tangle_family(const std::string& spec);

/// One tangle per bond, indexed like bond_paths(d).
using TangleAssignment = std::vector<TwoTangle>;

/// Replaces each bond's band by its tangle. NW/NE attach to the strands on
/// the counterclockwise side of the bond at its first and second node,
/// SW/SE to the others. Link strands crossing a bond cross both band edges.
/// Throws "standardize first" on non-standard input.
BondedDiagram insert_tangles(const BondedDiagram& d, const TangleAssignment& asg);

/// Fingerprints of every assignment drawn from `family`; keys are the
/// family indices per bond.
std::map<std::vector<int>, Fingerprint> tangle_invariant_set(const BondedDiagram& d,
                                                             const std::vector<TwoTangle>& family,
                                                             long max_assignments = 200000);
/// The same values as a sorted multiset.
std::vector<Fingerprint> tangle_multiset(const std::map<std::vector<int>, Fingerprint>& set);

}  // namespace bondforge
