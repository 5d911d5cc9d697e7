#include <gtest/gtest.h>

#include <random>

#include "bondforge/bracket.hpp"
#include "bondforge/tangle.hpp"
#include "support.hpp"

using namespace bondforge;
using testsupport::closure;

namespace {

LaurentPoly P(const char* s) { return parse_poly(s); }

// Bracket expansion through tangle insertion, one family member per bond.
LaurentPoly bracket_by_insertion(const BondedDiagram& d) {
  std::vector<TwoTangle> family = {builtin_tangle("identity"), builtin_tangle("crossing+"),
                                   builtin_tangle("crossing-")};
  std::size_t k = bond_paths(d).size();
  LaurentPoly total;
  std::vector<int> idx(k, 0);
  while (true) {
    TangleAssignment asg;
    int removed = 0;
    for (int i : idx) {
      asg.push_back(family[i]);
      removed += i == 0;
    }
    total += LaurentPoly::monomial(1, 0, removed, static_cast<int>(k) - removed) *
             kauffman_bracket(insert_tangles(d, asg));
    std::size_t i = 0;
    while (i < k && ++idx[i] == 3) idx[i++] = 0;
    if (i == k) break;
  }
  return total;
}

}  // namespace

TEST(Tangle, Builtins) {
  auto id = builtin_tangle("identity");
  EXPECT_EQ(id.boundary[NW].edge, id.boundary[SW].edge);
  EXPECT_EQ(id.boundary[NE].edge, id.boundary[SE].edge);
  EXPECT_EQ(id.fragment.crossing_count(), 0);
  EXPECT_EQ(builtin_tangle("crossing+").fragment, twist_tangle(1).fragment);
  EXPECT_EQ(builtin_tangle("crossing-").fragment, twist_tangle(-1).fragment);
  EXPECT_TRUE(twist_tangle(1).fragment.vertices[0].over02);
  EXPECT_EQ(twist_tangle(3).fragment.crossing_count(), 3);
  EXPECT_EQ(twist_tangle(-2).fragment.crossing_count(), 2);
  EXPECT_THROW(builtin_tangle("knot"), DiagramError);
  EXPECT_EQ(parse_tangle_family("twist:-2..2").size(), 5u);
  EXPECT_EQ(parse_tangle_family("identity,crossing+,crossing-").size(), 3u);
}

TEST(Tangle, IdentityDeletesBonds) {
  for (int n = 0; n <= 3; ++n) {
    for (auto fam : {ExampleFamily::U, ExampleFamily::K}) {
      auto d = gen_example(fam, n);
      auto out = insert_tangles(d, TangleAssignment(n, builtin_tangle("identity")));
      EXPECT_TRUE(validate(out).empty());
      EXPECT_EQ(fingerprint(out), unplug_bonded(d));
      EXPECT_EQ(kauffman_bracket(out), kauffman_bracket(underlying_link(d)));
    }
  }
}

TEST(Tangle, SingleCrossingInsertions) {
  auto u = insert_tangles(gen_example(ExampleFamily::U, 1), {builtin_tangle("crossing+")});
  EXPECT_EQ(u.crossing_count(), 1);
  EXPECT_EQ(kauffman_bracket(u), P("-A^3"));
  // Between two circles the same local crossing closes into the other curl.
  auto k = insert_tangles(gen_example(ExampleFamily::K, 1), {builtin_tangle("crossing+")});
  EXPECT_EQ(kauffman_bracket(k), P("-A^-3"));
  auto km = insert_tangles(gen_example(ExampleFamily::K, 1), {builtin_tangle("crossing-")});
  EXPECT_EQ(kauffman_bracket(km), P("-A^3"));
  EXPECT_EQ(fingerprint(k).component_count, 1);
}

TEST(Tangle, BandInheritsCrossings) {
  auto d = testsupport::bond_through_circle();
  ASSERT_TRUE(validate(d).empty());
  ASSERT_TRUE(is_standard(d));
  auto out = insert_tangles(d, {builtin_tangle("identity")});
  EXPECT_TRUE(validate(out).empty());
  EXPECT_EQ(out.crossing_count(), 4);
  EXPECT_EQ(kauffman_bracket(out), kauffman_bracket(underlying_link(d)));
  auto twisted = insert_tangles(d, {twist_tangle(2)});
  EXPECT_EQ(twisted.crossing_count(), 6);
  // Threading the circle (over, then under): the identity band is a finger
  // through the circle that retracts, so the link type is unchanged.
  auto threaded = testsupport::bond_through_circle(true, false);
  ASSERT_TRUE(validate(threaded).empty());
  auto finger = insert_tangles(threaded, {builtin_tangle("identity")});
  EXPECT_EQ(finger.crossing_count(), 4);
  EXPECT_EQ(fingerprint(finger), unplug_bonded(threaded));
  // With a full twist the circle catches the band.
  auto caught = insert_tangles(threaded, {twist_tangle(2)});
  EXPECT_NE(fingerprint(caught), fingerprint(insert_tangles(d, {twist_tangle(2)})));
}

TEST(Tangle, BracketDecomposition) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    auto d = closure(n, testsupport::random_word(rng, n, static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 3)));
    ASSERT_TRUE(validate(d).empty());
    ASSERT_TRUE(is_tight(d));
    EXPECT_EQ(bonded_bracket(d), bracket_by_insertion(d));
  }
}

TEST(Tangle, InvariantSet) {
  auto t = closure(2, {{1, 1}, {1, 1}, {1, 1}});
  auto family = parse_tangle_family("identity,crossing+,crossing-");
  auto set = tangle_invariant_set(t, family);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.begin()->second, fingerprint(t));
  auto u2 = tangle_invariant_set(gen_example(ExampleFamily::U, 2), family);
  EXPECT_EQ(u2.size(), 9u);
  EXPECT_THROW(tangle_invariant_set(gen_example(ExampleFamily::U, 4), family, 10), DiagramError);
}

TEST(Tangle, DisjointUnionCommutes) {
  auto x = gen_example(ExampleFamily::U, 1), y = gen_example(ExampleFamily::K, 1);
  auto both = disjoint_union(x, y);
  TangleAssignment asg = {builtin_tangle("crossing+"), builtin_tangle("crossing-")};
  auto joint = insert_tangles(both, asg);
  auto apart = disjoint_union(insert_tangles(x, {asg[0]}), insert_tangles(y, {asg[1]}));
  EXPECT_EQ(kauffman_bracket(joint), kauffman_bracket(apart));
  EXPECT_EQ(fingerprint(joint), fingerprint(apart));
}

TEST(Tangle, RejectsNonStandard) {
  // Turn the circle into bond edges so that bonds cross bonds.
  auto d = testsupport::bond_through_circle();
  int m = static_cast<int>(d.edges.size());
  d.edges[m - 1].kind = EdgeKind::bond;
  d.edges[m - 2].kind = EdgeKind::bond;
  EXPECT_FALSE(is_standard(d));
  EXPECT_THROW(insert_tangles(d, {builtin_tangle("identity")}), DiagramError);
}
