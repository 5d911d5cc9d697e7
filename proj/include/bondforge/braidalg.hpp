#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bondforge/diagram.hpp"

namespace bondforge {

enum class GenType : std::uint8_t { sigma, bond };

/// One letter of a bonded braid word. Strand indices are 1-based.
/// Bonds join strands i < j; j == i + 1 is an elementary bond, otherwise
/// `pattern` holds one 'o' (bond over) or 'u' (bond under) per threaded
/// strand i+1 .. j-1.
struct BraidGen {
  GenType type = GenType::sigma;
  int i = 1;
  int j = 2;
  bool inverse = false;             // sigma only
  BondSign sign = BondSign::plain;  // bonds only
  std::string pattern;

  static BraidGen sigma(int i, bool inverse = false);
  static BraidGen bond(int i, BondSign sign = BondSign::plain);
  static BraidGen long_bond(int i, int j, std::string pattern, BondSign sign = BondSign::plain);

  bool is_bond() const { return type == GenType::bond; }
  bool is_long() const { return is_bond() && j > i + 1; }
  /// Group inverse: sigma flips, a bond swaps attracting and repelling.
  BraidGen inverted() const;

  friend bool operator==(const BraidGen&, const BraidGen&) = default;
};

/// `monoid`: bonds are plain and have no inverses. `enhanced`: bonds are
/// attracting (b) or repelling (b^-1) and cancel in pairs.
enum class WordMode : std::uint8_t { monoid, enhanced };

struct BraidWord {
  int n = 1;
  std::vector<BraidGen> gens;
  WordMode mode = WordMode::monoid;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// Throws DiagramError on index, pattern or sign violations.
void check_word(const BraidWord& w);

enum class ParseMode : std::uint8_t { automatic, monoid, enhanced };
/// Grammar: "n=<k>:" then tokens s<i>, s<i>^-1, b<i>, b<i>^-1 and
/// B<i>,<j>[<o|u>*] (optionally ^-1). `automatic` picks enhanced iff some
/// bond is inverted.
BraidWord parse_word(const std::string& text, ParseMode mode = ParseMode::automatic);
std::string format_word(const BraidWord& w);
std::string format_gen(const BraidGen& g);

/// Every word one literal relation application away: the reduced
/// presentation in both directions at every position, sigma_i sigma_i^-1
/// deletion, long-bond commutations and (enhanced) bond pair deletion.
/// Sorted by formatted text, no duplicates.
std::vector<BraidWord> relation_neighbors(const BraidWord& w);

/// W b_{j-1} W^-1 where W drags strand i next to strand j, passing over the
/// threaded strands the bond passes over.
BraidWord expand_long_bond(const BraidGen& g, int n);
/// Expands every long bond of the word.
BraidWord expand_long_bonds(const BraidWord& w);

/// Closure around the right. Strands run downward; long bonds cross the
/// threaded strands with their pattern; enhanced signs go onto the bonds.
BondedDiagram closure(const BraidWord& w);

struct Projections {
  BraidWord forget;    // bonds deleted
  BraidWord collapse;  // b_i -> sigma_i, b_i^-1 -> sigma_i^-1
  /// perm[p-1] is the bottom position of the strand entering at top p.
  std::vector<int> perm;
  int expsum = 0;      // exponent sum of the sigma letters
  int bondcount = 0;   // bonds, repelling ones counted -1
};
/// Long bonds are expanded first.
Projections projections(const BraidWord& w);
/// Number of cycles of the permutation: the closure's component count.
int cycle_count(const std::vector<int>& perm);

/// Deletes adjacent mutually inverse bonds until none remain.
BraidWord free_cancel(const BraidWord& w);

enum class LKind : std::uint8_t { over, under };
/// Cuts strand `strand` at the height of letter `slot` (slot == length: at
/// the bottom) and pulls the new pair of strands to the right edge, over or
/// under everything. The result lives on n+1 strands.
BraidWord l_move(const BraidWord& w, int slot, int strand, LKind kind);

struct Relation {
  std::string family;
  BraidWord lhs, rhs;
};
enum class Presentation : std::uint8_t { reduced, irredundant };
/// Relation table on elementary bonds. The irredundant one uses b_1 only.
std::vector<Relation> presentation(int n, Presentation p, WordMode mode = WordMode::monoid);

struct EquivBudget {
  int max_strands = 6;
  int max_length = 16;
  long max_states = 200000;
  bool stabilization = true;
  bool conjugation = true;
  Presentation relations = Presentation::reduced;
  int threads = 1;
};

struct EquivStep {
  std::string move;  // "start", "relation", "conjugate", "stabilize", "destabilize"
  BraidWord word;
};

struct EquivResult {
  enum class Verdict : std::uint8_t { equivalent, distinguished, unknown };
  Verdict verdict = Verdict::unknown;
  std::vector<EquivStep> path;  // equivalent: from lhs to rhs
  std::string invariant;        // distinguished: the invariant that differs
  long states = 0;
};
std::string to_string(EquivResult::Verdict v);

/// Bidirectional breadth-first search over relations (applied as relators
/// on freely reduced words), conjugation by letters and (de)stabilization.
/// Long bonds are expanded first. A semi-decision: `unknown` is returned
/// once the state budget is spent.
EquivResult equiv_search(const BraidWord& lhs, const BraidWord& rhs, const EquivBudget& budget);

}  // namespace bondforge
