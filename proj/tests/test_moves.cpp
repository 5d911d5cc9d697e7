#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "bondforge/bracket.hpp"
#include "bondforge/moves.hpp"
#include "bondforge/unplug.hpp"
#include "support.hpp"

using namespace bondforge;
using testsupport::closure;

namespace {

BondedDiagram load(const std::string& name) {
  std::ifstream in(std::string(BONDFORGE_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bpd(ss.str());
}

std::vector<BondedDiagram> samples() {
  std::vector<BondedDiagram> out = {gen_example(ExampleFamily::U, 1), gen_example(ExampleFamily::K, 2),
                                    closure(2, {{1, 1}, {1, 1}, {1, 1}}), load("theta_knotted_bond.bpd"),
                                    testsupport::bond_through_circle(true, false)};
  std::mt19937 rng(11);
  for (int i = 0; i < 4; ++i) {
    int n = 2 + static_cast<int>(rng() % 2);
    out.push_back(closure(n, testsupport::random_word(rng, n, 3, 1 + static_cast<int>(rng() % 2))));
  }
  // Long bonds and bond crossings come from a few topological steps.
  WalkOptions w;
  w.steps = 6;
  w.max_extra_crossings = 4;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    w.seed = seed;
    out.push_back(random_walk(gen_example(ExampleFamily::U, 2), w).diagram);
  }
  return out;
}

MoveForm inverse_form(MoveForm f) {
  switch (f) {
    case MoveForm::create: return MoveForm::remove;
    case MoveForm::remove: return MoveForm::create;
    case MoveForm::slide_in: return MoveForm::slide_out;
    case MoveForm::slide_out: return MoveForm::slide_in;
    default: return f;
  }
}

Calculus home(MoveKind k) { return k == MoveKind::RVT ? Calculus::rigid : Calculus::topological; }

// Some site of the inverse form, with either parameter, restores `orig`.
bool restores(const BondedDiagram& orig, const BondedDiagram& moved, const MoveSite& done) {
  for (MoveSite s : find_moves(moved, done.kind, home(done.kind))) {
    if (s.form != inverse_form(done.form)) continue;
    for (int p = 0; p < 2; ++p) {
      s.param = p;
      if (same_diagram(apply_move(moved, s, home(done.kind)), orig)) return true;
    }
  }
  return false;
}

std::vector<MoveSite> capped(std::vector<MoveSite> v, std::size_t n) {
  if (v.size() > n) v.resize(n);
  return v;
}

LaurentPoly curl_factor(int e) { return LaurentPoly::monomial(-1, e); }

}  // namespace

TEST(Moves, EverySiteGivesAPlanarDiagram) {
  for (const auto& d : samples()) {
    ASSERT_TRUE(validate(d).empty());
    for (MoveKind k : all_move_kinds()) {
      for (MoveSite s : capped(find_moves(d, k, home(k)), 40)) {
        for (int p = 0; p < 2; ++p) {
          s.param = p;
          auto out = apply_move(d, s, home(k));
          auto issues = validate(out);
          ASSERT_TRUE(issues.empty()) << describe(s) << ": " << issues[0] << "\n" << to_bpd(d);
          EXPECT_EQ(faces(out).size(), static_cast<std::size_t>(testsupport::expected_faces(out)));
          if (k != MoveKind::enhancedCancel) EXPECT_EQ(out.bond_count(), d.bond_count()) << describe(s);
        }
      }
    }
  }
}

TEST(Moves, InverseRestores) {
  for (const auto& d : samples()) {
    for (MoveKind k : all_move_kinds()) {
      for (MoveSite s : capped(find_moves(d, k, home(k)), 12)) {
        s.param = 1;
        auto out = apply_move(d, s, home(k));
        EXPECT_TRUE(restores(d, out, s)) << describe(s) << "\n" << to_bpd(d);
      }
    }
  }
}

TEST(Moves, KindsFollowStrandTypes) {
  auto u = gen_example(ExampleFamily::U, 1);
  EXPECT_EQ(find_moves(u, MoveKind::bondR1).size(), 2u);
  EXPECT_EQ(find_moves(u, MoveKind::R1).size(), 4u);
  for (const auto& s : find_moves(u, MoveKind::mixedR2)) EXPECT_EQ(s.form, MoveForm::create);
  EXPECT_TRUE(find_moves(u, MoveKind::bondR2).empty());
  EXPECT_TRUE(find_moves(u, MoveKind::mixedR2, Calculus::rigid_tight).empty());
  // Two nodes, two sides each.
  auto tvt = find_moves(u, MoveKind::TVT);
  EXPECT_EQ(tvt.size(), 4u);
  EXPECT_TRUE(find_moves(u, MoveKind::TVT, Calculus::rigid).empty());
  EXPECT_EQ(find_moves(u, MoveKind::RVT, Calculus::rigid).size(), 1u);
}

TEST(Moves, Errors) {
  auto u = gen_example(ExampleFamily::U, 1);
  auto tvt = find_moves(u, MoveKind::TVT).at(0);
  EXPECT_THROW(
      {
        try {
          apply_move(u, tvt, Calculus::rigid);
        } catch (const DiagramError& e) {
          EXPECT_STREQ(e.what(), "move not in calculus");
          throw;
        }
      },
      DiagramError);
  auto moved = apply_move(u, tvt);
  EXPECT_THROW(
      {
        try {
          apply_move(moved, tvt);
        } catch (const DiagramError& e) {
          EXPECT_STREQ(e.what(), "site mismatch");
          throw;
        }
      },
      DiagramError);
}

TEST(Moves, TightWalkKeepsBondedBracket) {
  std::mt19937 rng(5);
  std::vector<MoveKind> kinds;
  for (MoveKind k : all_move_kinds())
    if (k != MoveKind::R1 && k != MoveKind::enhancedCancel && in_calculus(k, Calculus::rigid_tight)) kinds.push_back(k);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    auto d = closure(n, testsupport::random_word(rng, n, 3, 1 + static_cast<int>(rng() % 2)));
    WalkOptions w;
    w.calculus = Calculus::rigid_tight;
    w.kinds = kinds;
    w.steps = 60;
    w.seed = static_cast<std::uint64_t>(trial);
    w.max_extra_crossings = 6;
    auto r = random_walk(d, w);
    ASSERT_TRUE(is_tight(r.diagram));
    EXPECT_EQ(bonded_bracket(r.diagram), bonded_bracket(d)) << trial;
  }
}

TEST(Moves, FlipKeepsBondedBracket) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    auto d = closure(n, testsupport::random_word(rng, n, 4, 1 + static_cast<int>(rng() % 2)));
    auto want = bonded_bracket(d);
    for (MoveSite s : find_moves(d, MoveKind::RVT, Calculus::rigid)) {
      for (int p = 0; p < 2; ++p) {
        s.param = p;
        EXPECT_EQ(bonded_bracket(apply_move(d, s, Calculus::rigid)), want) << describe(s);
      }
    }
  }
}

TEST(Moves, CurlsScaleBracket) {
  auto d = closure(3, {{1, 1}, {2, 0}, {2, -1}, {1, 0}});
  auto base = bonded_bracket(d);
  for (MoveSite s : find_moves(d, MoveKind::R1, Calculus::rigid_tight)) {
    if (s.form != MoveForm::create) continue;
    for (int p = 0; p < 2; ++p) {
      s.param = p;
      auto b = bonded_bracket(apply_move(d, s, Calculus::rigid_tight));
      EXPECT_TRUE(b == base * curl_factor(3) || b == base * curl_factor(-3)) << describe(s);
    }
  }
}

TEST(Moves, TopologicalWalkKeepsUnplugging) {
  std::vector<BondedDiagram> starts = {gen_example(ExampleFamily::U, 2), load("theta_knotted_bond.bpd"),
                                       closure(2, {{1, 1}, {1, 0}, {1, 1}, {1, 1}})};
  for (std::size_t i = 0; i < starts.size(); ++i) {
    auto bonded = unplug_bonded(starts[i]);
    auto strict = unplug_strict_set(starts[i]);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      WalkOptions w;
      w.steps = 40;
      w.seed = seed;
      w.max_extra_crossings = 5;
      auto r = random_walk(starts[i], w);
      EXPECT_EQ(unplug_bonded(r.diagram), bonded) << i << " seed " << seed;
      EXPECT_EQ(unplug_strict_set(r.diagram), strict) << i << " seed " << seed;
    }
  }
}

TEST(Moves, WalksAreSeeded) {
  auto d = gen_example(ExampleFamily::U, 2);
  WalkOptions w;
  w.steps = 30;
  w.seed = 42;
  auto a = random_walk(d, w), b = random_walk(d, w);
  EXPECT_EQ(a.diagram, b.diagram);
  EXPECT_EQ(a.log.size(), 30u);
  EXPECT_EQ(a.diagram.bond_count(), d.bond_count());
  w.seed = 43;
  EXPECT_NE(random_walk(d, w).diagram, a.diagram);
}

TEST(Moves, StandardizeAndTighten) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    WalkOptions w;
    w.steps = 25;
    w.seed = seed;
    w.max_extra_crossings = 6;
    auto d = random_walk(gen_example(ExampleFamily::U, 2), w).diagram;
    auto s = standardize(d);
    ASSERT_TRUE(validate(s).empty());
    EXPECT_TRUE(is_standard(s));
    auto t = tighten(d);
    ASSERT_TRUE(validate(t).empty());
    EXPECT_TRUE(is_tight(t));
    EXPECT_EQ(unplug_bonded(s), unplug_bonded(d));
    EXPECT_EQ(unplug_bonded(t), unplug_bonded(d));
    EXPECT_EQ(unplug_strict_set(t), unplug_strict_set(d));
  }
  auto tight = gen_example(ExampleFamily::K, 2);
  EXPECT_EQ(tighten(tight), tight);
}

TEST(Moves, EnhancedPairRoundTrip) {
  auto d = gen_example(ExampleFamily::U, 1);
  auto sites = find_moves(d, MoveKind::enhancedCancel);
  ASSERT_FALSE(sites.empty());
  auto with = apply_move(d, sites[0]);
  EXPECT_EQ(with.bond_count(), 3);
  MoveSite cancel;
  for (const auto& s : find_moves(with, MoveKind::enhancedCancel))
    if (s.form == MoveForm::remove) cancel = s;
  ASSERT_EQ(cancel.form, MoveForm::remove);
  EXPECT_TRUE(same_diagram(apply_move(with, cancel), d));
  // Equal signs never cancel.
  auto plain = gen_example(ExampleFamily::K, 2, BondSign::attracting);
  for (const auto& s : find_moves(plain, MoveKind::enhancedCancel)) EXPECT_EQ(s.form, MoveForm::create);
}
