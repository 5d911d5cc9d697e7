#include <gtest/gtest.h>

#include <random>

#include "bondforge/braiding.hpp"
#include "bondforge/bracket.hpp"
#include "bondforge/unplug.hpp"
#include "support.hpp"

using namespace bondforge;

namespace {

SliceSequence S(const std::string& text) { return parse_bms(text); }

LaurentPoly oracle_jones(const BondedDiagram& classical) {
  int w = writhe(classical);
  return LaurentPoly::monomial(w % 2 ? -1 : 1, -3 * w) * testsupport::oracle_bracket(classical);
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const DiagramError& e) {
    return e.what();
  }
  return "";
}

// Orientation of every strand just above each bond: true when both ends
// point down. Independent of the library's bookkeeping.
bool bonds_on_down_strands(const SliceSequence& s) {
  std::vector<bool> down;
  for (const SliceEvent& e : s.events) {
    auto p = static_cast<std::size_t>(e.pos - 1);
    switch (e.kind) {
      case SliceKind::cup:
        down.insert(down.begin() + static_cast<long>(p), !e.left_up);
        down.insert(down.begin() + static_cast<long>(p) + 1, e.left_up);
        break;
      case SliceKind::cap: down.erase(down.begin() + static_cast<long>(p), down.begin() + static_cast<long>(p) + 2); break;
      case SliceKind::cross: std::swap(down[p], down[p + 1]); break;
      case SliceKind::bond:
        if (!down[p] || !down[p + static_cast<std::size_t>(e.reach)]) return false;
        break;
    }
  }
  return true;
}

struct Summary {
  Fingerprint bonded;
  std::vector<Fingerprint> strict;
  int bonds;
  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summary(const BondedDiagram& d) { return {unplug_bonded(d), unplug_strict_set(d), d.bond_count()}; }

}  // namespace

TEST(Bms, RoundTripAndErrors) {
  std::string text = "cup 1 lu\ncup 3 ru\nx 2 +\nbond 1 3 [ou] -\nx 2 -\ncap 3\ncap 1\n";
  auto s = S("# comment\n" + text);
  EXPECT_EQ(s.events.size(), 7u);
  EXPECT_EQ(to_bms(s), text);
  EXPECT_EQ(s.events[3].sign, BondSign::repelling);
  EXPECT_EQ(error_of([] { S("cup 1 lu\nfoo 2\n"); }), "line 2: unknown event 'foo'");
  EXPECT_EQ(error_of([] { S("cup 1\n"); }), "line 1: malformed event");
  EXPECT_EQ(error_of([] { S("bond 1 1 ou\n"); }), "line 1: malformed event");
  EXPECT_EQ(error_of([] { check_slices(S("cup 1 lu\n")); }), "unbalanced cups/caps");
  EXPECT_EQ(error_of([] { check_slices(S("cup 1 lu\ncup 3 ru\ncap 2\ncap 1\n")); }),
            "slice 3: cap joins strands of equal orientation");
  EXPECT_EQ(error_of([] { check_slices(S("cup 1 lu\nbond 1 1 [o]\ncap 1\n")); }), "slice 2: pattern length mismatch");
  EXPECT_EQ(error_of([] { check_slices(S("cup 1 lu\nx 2 +\ncap 1\n")); }), "slice 2: position out of range");
}

TEST(SlicesToDiagram, Examples) {
  auto unknot = slices_to_diagram(S("cup 1 lu\ncap 1\n"));
  EXPECT_EQ(unknot.free_loops, 1);
  EXPECT_EQ(unplug_bonded(unknot).component_count, 1);

  auto trefoil = slices_to_diagram(braid_to_slices(parse_word("n=2: s1 s1 s1")));
  ASSERT_TRUE(validate(trefoil).empty());
  EXPECT_EQ(writhe(trefoil), 3);
  EXPECT_EQ(normalized_jones(trefoil), oracle_jones(testsupport::closure(2, {{1, 1}, {1, 1}, {1, 1}})));
  EXPECT_EQ(normalized_jones(trefoil), oracle_jones(trefoil));

  // U_1 from slices is the generated U_1, bracket included.
  auto u1 = slices_to_diagram(S("cup 1 lu\nbond 1 1 []\ncap 1\n"));
  EXPECT_EQ(summary(u1), summary(gen_example(ExampleFamily::U, 1)));
  EXPECT_EQ(bonded_bracket(u1), bonded_bracket(gen_example(ExampleFamily::U, 1)));
  for (int n = 0; n <= 4; ++n) {
    for (auto f : {ExampleFamily::U, ExampleFamily::K}) {
      auto d = slices_to_diagram(example_slices(f, n));
      EXPECT_EQ(summary(d), summary(gen_example(f, n))) << n;
      EXPECT_EQ(bonded_bracket(d), bonded_bracket(gen_example(f, n))) << n;
    }
  }
}

TEST(PrepareBonds, RewritesOnlyUpwardEnds) {
  auto k2 = example_slices(ExampleFamily::K, 2);
  EXPECT_EQ(prepare_bonds(k2), k2);
  std::vector<SliceSequence> cases = {
      S("cup 1 lu\nbond 1 1 []\ncap 1\n"),                                   // anti-parallel
      S("cup 1 ru\nbond 1 1 []\ncap 1\n"),                                   // mirror
      S("cup 1 lu\ncup 3 lu\nbond 1 2 [o]\nbond 1 2 [u]\ncap 3\ncap 1\n"),  // both ends up
      S("cup 1 ru\ncup 3 ru\nx 2 +\nbond 2 2 [u] +\nx 2 -\ncap 3\ncap 1\n"),
  };
  for (const auto& s : cases) {
    EXPECT_FALSE(bonds_on_down_strands(s));
    auto p = prepare_bonds(s);
    EXPECT_TRUE(bonds_on_down_strands(p)) << to_bms(p);
    EXPECT_EQ(summary(slices_to_diagram(p)), summary(slices_to_diagram(s))) << to_bms(s);
    EXPECT_EQ(prepare_bonds(p), p);
  }
  EXPECT_EQ(error_of([&] { prepare_bonds(cases[0], Calculus::rigid); }), "braiding requires topological category");
  EXPECT_EQ(error_of([&] { braid(cases[0], {'o', Calculus::rigid_tight}); }), "braiding requires topological category");
}

TEST(Braid, Examples) {
  auto tre = parse_word("n=2: s1 s1 s1");
  auto w = braid(braid_to_slices(tre));
  EXPECT_EQ(w, tre);
  EXPECT_EQ(normalized_jones(closure(w)), oracle_jones(testsupport::closure(2, {{1, 1}, {1, 1}, {1, 1}})));

  auto u1 = braid(example_slices(ExampleFamily::U, 1));
  auto pr = projections(u1);
  EXPECT_EQ(pr.bondcount, 1);
  EXPECT_EQ(unplug_bonded(closure(u1)), unplug_bonded(gen_example(ExampleFamily::U, 1)));
  EXPECT_EQ(unplug_bonded(closure(u1)).component_count, 1);

  auto k2 = braid(example_slices(ExampleFamily::K, 2));
  EXPECT_EQ(bonded_bracket(tighten(closure(k2))), bonded_bracket(gen_example(ExampleFamily::K, 2)));

  // Up-arcs that cross both over and under are split.
  auto mixed = S("cup 1 ru\ncup 1 ru\nx 2 +\nx 2 +\ncap 1\ncap 1\n");
  auto c = braid_certificate(mixed);
  EXPECT_TRUE(c.pass());
  for (const auto& g : c.word.gens) EXPECT_FALSE(g.is_long());
  EXPECT_EQ(normalized_jones(closure(c.word)), oracle_jones(slices_to_diagram(mixed)));
}

TEST(Braid, CertificatePassesOnFamilies) {
  for (int n = 1; n <= 4; ++n) {
    for (auto f : {ExampleFamily::U, ExampleFamily::K}) {
      for (auto sign : {BondSign::plain, BondSign::attracting}) {
        auto c = braid_certificate(example_slices(f, n, sign));
        for (const auto& ch : c.checks) EXPECT_TRUE(ch.pass) << n << ' ' << ch.invariant << ": " << ch.diagram << " vs " << ch.braid;
        for (const auto& g : c.word.gens) EXPECT_FALSE(g.is_long());
        if (sign != BondSign::plain) EXPECT_EQ(c.word.mode, WordMode::enhanced);
      }
    }
  }
}

TEST(Braid, RandomSlices) {
  int with_bonds = 0, with_up_crossings = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = random_slices(seed, 12, 2);
    ASSERT_LE(s.events.size(), 12u);
    check_slices(s);
    auto c = braid_certificate(s);
    for (const auto& ch : c.checks)
      EXPECT_TRUE(ch.pass) << seed << ' ' << ch.invariant << ": " << ch.diagram << " vs " << ch.braid << "\n" << to_bms(s);
    // Oriented Jones of the underlying links, not only the orientation-free fingerprint.
    auto a = underlying_link(slices_to_diagram(s)), b = underlying_link(closure(c.word));
    EXPECT_EQ(normalized_jones(a), normalized_jones(b)) << seed << "\n" << to_bms(s);
    EXPECT_EQ(normalized_jones(a), oracle_jones(a));
    if (slices_to_diagram(s).bond_count() > 0) ++with_bonds;
    if (c.word.n > 1) ++with_up_crossings;
  }
  EXPECT_GT(with_bonds, 10);
  EXPECT_GT(with_up_crossings, 10);
}

TEST(Braid, FreeLabelDoesNotMatter) {
  int tried = 0;
  for (std::uint64_t seed = 100; tried < 20; ++seed) {
    auto s = random_slices(seed, 12, 2);
    auto o = braid(s, {'o'}), u = braid(s, {'u'});
    if (o == u) continue;
    ++tried;
    EXPECT_EQ(summary(closure(o)), summary(closure(u))) << seed;
    EXPECT_EQ(normalized_jones(underlying_link(closure(o))), normalized_jones(underlying_link(closure(u)))) << seed;
  }
  EXPECT_EQ(error_of([] { braid(S("cup 1 lu\ncap 1\n"), {'x'}); }), "free label must be o or u");
}

TEST(Braid, MonotoneInputIsFixed) {
  std::mt19937 rng(3);
  for (int t = 0; t < 30; ++t) {
    int n = 2 + static_cast<int>(rng() % 3);
    BraidWord w{n, {}, WordMode::monoid};
    for (int k = 0; k < 6; ++k) {
      int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
      if (rng() % 3 == 0) {
        int j = i + 1 + static_cast<int>(rng() % static_cast<unsigned>(n - i));
        std::string pat;
        for (int q = i + 1; q < j; ++q) pat += rng() % 2 ? 'o' : 'u';
        w.gens.push_back(j == i + 1 ? BraidGen::bond(i) : BraidGen::long_bond(i, j, pat));
      } else {
        w.gens.push_back(BraidGen::sigma(i, rng() % 2 == 0));
      }
    }
    EXPECT_EQ(braid(braid_to_slices(w)), expand_long_bonds(w)) << format_word(w);
  }
}

TEST(Braid, CorruptedWordFails) {
  auto tre = braid_to_slices(parse_word("n=2: s1 s1 s1"));
  auto c = certify(tre, parse_word("n=2: s1 s1"));
  EXPECT_FALSE(c.pass());
  auto u1 = example_slices(ExampleFamily::U, 1);
  auto w = braid(u1);
  ASSERT_TRUE(certify(u1, w).pass());
  for (std::size_t k = 0; k < w.gens.size(); ++k) {
    auto v = w;
    v.gens.erase(v.gens.begin() + static_cast<long>(k));
    EXPECT_FALSE(certify(u1, v).pass()) << format_word(v);
  }
}
