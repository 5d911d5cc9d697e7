#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bondforge/braidalg.hpp"
#include "bondforge/diagram.hpp"
#include "bondforge/moves.hpp"

namespace bondforge {

enum class SliceKind : std::uint8_t { cup, cap, cross, bond };

/// One event of a Morse slice picture, read top to bottom. Positions are
/// 1-based among the strands present just above the event.
///  - cup: a new pair at pos, pos+1 (a local maximum); `left_up` says which
///    leg is oriented upward.
///  - cap: joins pos and pos+1 (a local minimum).
///  - cross: pos and pos+1 cross; `positive` puts the strand coming from the
///    upper right over, so it is sigma_pos when both strands run down.
///  - bond: a horizontal bond from pos to pos+reach, passing the strands in
///    between with one 'o' (bond over) or 'u' per strand.
struct SliceEvent {
  SliceKind kind = SliceKind::cup;
  int pos = 1;
  bool left_up = true;
  bool positive = true;
  int reach = 1;
  std::string pattern;
  BondSign sign = BondSign::plain;

  friend bool operator==(const SliceEvent&, const SliceEvent&) = default;
};

struct SliceSequence {
  std::vector<SliceEvent> events;
  friend bool operator==(const SliceSequence&, const SliceSequence&) = default;
};

/// .bms text: one event per line, "cup <pos> <lu|ru>", "cap <pos>",
/// "x <pos> <+|->", "bond <pos> <reach> <[pattern]> [+|-]". Blank lines and
/// '#' comments are skipped.
SliceSequence parse_bms(std::string_view text);
std::string to_bms(const SliceSequence& s);

/// Throws DiagramError unless positions, patterns and orientations are
/// consistent and the picture is closed.
void check_slices(const SliceSequence& s);

/// Planar code of the slice picture, oriented as the slices say.
BondedDiagram slices_to_diagram(const SliceSequence& s);

/// Moves every bond end that sits on an upward strand onto a downward one
/// by a zigzag and a node rotation. The bond then crosses over the adjacent
/// part of its own strand. Only possible with flexible vertices.
SliceSequence prepare_bonds(const SliceSequence& s, Calculus calculus = Calculus::topological);

struct BraidingOptions {
  char free_label = 'o';  // label of up-arcs that cross nothing
  Calculus calculus = Calculus::topological;
};

/// Alexander algorithm: every up-arc, split into pieces that pass only
/// over or only under, is swung around the axis into a pair of braid
/// strands on the right. Long bonds are expanded, so the word uses sigmas
/// and elementary bonds only.
BraidWord braid(const SliceSequence& s, const BraidingOptions& opt = {});

/// Closed slice form of a braid closure: cups, the word, caps.
SliceSequence braid_to_slices(const BraidWord& w);
/// Slice forms of U_n (bonds across one circle) and K_n (bonds between two).
SliceSequence example_slices(ExampleFamily family, int n, BondSign sign = BondSign::plain);
/// A random closed slice sequence with at most `max_events` events.
SliceSequence random_slices(std::uint64_t seed, int max_events = 12, int max_bonds = 2);

struct CertificateCheck {
  std::string invariant;
  bool pass = false;
  std::string diagram;  // value on the slice diagram
  std::string braid;    // value on the closure of the word
};

struct BraidCertificate {
  BraidWord word;
  std::vector<CertificateCheck> checks;
  bool pass() const;
};

/// Compares the slice diagram with the closure of `w`.
BraidCertificate certify(const SliceSequence& s, const BraidWord& w);
BraidCertificate braid_certificate(const SliceSequence& s, const BraidingOptions& opt = {});

}  // namespace bondforge
