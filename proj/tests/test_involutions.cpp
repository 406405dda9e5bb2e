#include <gtest/gtest.h>

#include <map>
#include <set>

#include "csf/involutions.hpp"

using namespace csf;
using Label = InvolutionClass::Label;

namespace {

struct Pair {
  CycleFT from;
  InvolutionClass from_class;
  CycleFT to;
  InvolutionClass to_class;
};

InvolutionClass cls(Label l) { return InvolutionClass::make(l); }
InvolutionClass cls(Label l, int i) { return InvolutionClass::make(l, i, true); }

}  // namespace

TEST(InvolutionClass, Names) {
  EXPECT_EQ(cls(Label::G, -1).to_string(), "G_-1");
  EXPECT_EQ(cls(Label::E).to_string(), "E");
  EXPECT_EQ(cls(Label::I2).to_string(), "I2");
}

// Hand-checked pairs on C_6.
TEST(CycleInvolution, HandCheckedPairs) {
  const std::vector<Pair> pairs{
      {{{{2, {3, 1}, 3}, {6, {1, 1}, 1}}}, cls(Label::B, 1), {{{2, {1}, 1}, {3, {3}, 3}, {6, {1, 1}, 1}}}, cls(Label::A, 1)},
      {{{{3, {2}, 2}, {5, {1, 1, 2}, 1}}}, cls(Label::B, 2), {{{3, {2}, 2}, {5, {2}, 1}, {1, {1, 1}, 1}}}, cls(Label::A, 2)},
      {{{{2, {2, 1}, 2}, {5, {3}, 1}}}, cls(Label::B, 1), {{{2, {1}, 1}, {3, {2}, 2}, {5, {3}, 1}}}, cls(Label::A, 1)},
      {{{{3, {2}, 2}, {5, {1, 3}, 1}}}, cls(Label::D, 1), {{{2, {2}, 2}, {4, {3}, 2}, {1, {1}, 1}}}, cls(Label::C, 1)},
  };
  for (const auto& p : pairs) {
    EXPECT_EQ(classify_cycle(p.from, 6), p.from_class) << to_string(p.from);
    EXPECT_EQ(classify_cycle(p.to, 6), p.to_class) << to_string(p.to);
    EXPECT_EQ(cycle_involution(p.from, 6), p.to) << to_string(p.from);
    EXPECT_EQ(cycle_involution(p.to, 6), p.from) << to_string(p.to);
  }
}

TEST(CycleInvolution, LastTreeThatCannotBreak) {
  // (5,(1,3),1): the last part 3 does not fit before the seam, so not B.
  CycleFT f{{{3, {2}, 2}, {5, {1, 3}, 1}}};
  EXPECT_NE(classify_cycle(f, 6).label, Label::B);
}

TEST(CycleInvolution, AuditAndFixedPoints) {
  for (int a = 2; a <= 7; ++a) {
    auto domain = enumerate_forest_triples(cycle_graph(a));
    auto rep = audit_involution(domain, make_cycle_involution(a), true);
    EXPECT_TRUE(rep.ok()) << a << ": " << (rep.ok() ? "" : rep.violations.front().axiom);
    CycleHost host = cycle_host(a);
    std::set<ForestTriple> expected;
    for (const auto& c : cycle_fixed_points(a)) expected.insert(decode_cycle_forest(host, c));
    EXPECT_EQ(std::set<ForestTriple>(rep.fixed.begin(), rep.fixed.end()), expected) << a;
  }
}

TEST(CycleInvolution, FixedPointCountsPerComposition) {
  for (int a = 2; a <= 8; ++a) {
    std::map<Composition, int> count;
    for (const auto& c : cycle_fixed_points(a)) {
      // β: size of the tree through 1, then the others in cyclic order after it.
      std::vector<int> beta{c.entries.back().alpha.sum()};
      for (std::size_t j = 0; j + 1 < c.entries.size(); ++j) beta.push_back(c.entries[j].alpha.sum());
      ++count[Composition(beta)];
    }
    for_each_composition(a, [&](const Composition& beta) {
      int expected = beta.front();
      for (int p : beta.parts()) expected *= p - 1;
      EXPECT_EQ(count[beta], expected) << a << " " << beta;
    });
  }
}

// Hand-checked pairs on C_6 + U_4.
TEST(CycleTreeInvolution, HandCheckedPairs) {
  const std::vector<Pair> pairs{
      {{{{2, {1, 2, 1}, 1}, {6, {1, 4}, 1}}}, cls(Label::B, 1), {{{2, {1}, 1}, {3, {1, 2}, 1}, {6, {1, 4}, 1}}}, cls(Label::A, 1)},
      {{{{2, {2}, 2}, {4, {1}, 1}, {5, {2, 4}, 2}}}, cls(Label::C), {{{2, {2}, 2}, {4, {2, 1, 4}, 2}}}, cls(Label::D)},
      {{{{2, {2}, 2}, {4, {2}, 1}, {6, {4}, 2}, {1, {1}, 1}}}, cls(Label::E), {{{4, {2}, 2}, {6, {4}, 2}, {1, {1, 2}, 1}}}, cls(Label::F)},
      {{{{2, {2}, 2}, {4, {2, 4}, 1}, {1, {1}, 1}}}, cls(Label::G, 2), {{{4, {2}, 2}, {6, {1, 2, 4}, 1}}}, cls(Label::H, 2)},
      {{{{2, {2}, 2}, {4, {2, 4}, 2}, {1, {1}, 1}}}, cls(Label::G, 1), {{{3, {2}, 2}, {5, {1, 2, 4}, 1}}}, cls(Label::H, 1)},
      {{{{3, {7}, 5}, {1, {2}, 2}}}, cls(Label::G, -1), {{{2, {2, 7}, 2}}}, cls(Label::H, -1)},
  };
  for (const auto& p : pairs) {
    EXPECT_EQ(classify_cycle_tree(p.from, 6, 4), p.from_class) << to_string(p.from);
    EXPECT_EQ(classify_cycle_tree(p.to, 6, 4), p.to_class) << to_string(p.to);
    EXPECT_EQ(cycle_tree_involution(p.from, 6, 4), p.to) << to_string(p.from);
    EXPECT_EQ(cycle_tree_involution(p.to, 6, 4), p.from) << to_string(p.to);
  }
}

TEST(CycleTreeInvolution, AuditPathAndStar) {
  for (int a = 2; a <= 6; ++a)
    for (int k = 1; a + k <= 8; ++k)
      for (const LabeledGraph& u : {path_graph(k), star_graph(k)}) {
        auto rep = audit_involution(ft_prime_members(a, u), make_cycle_tree_involution(a, u), true);
        EXPECT_TRUE(rep.ok()) << a << "," << k << ": " << (rep.ok() ? "" : rep.violations.front().axiom);
      }
}

TEST(CycleTreeInvolution, PieceAtKHasNoFixedPoints) {
  for (int a = 2; a <= 6; ++a)
    for (int k = 1; a + k <= 8; ++k) {
      auto rep = audit_involution(ft_prime_members(a, path_graph(k), k), make_cycle_tree_involution(a, path_graph(k)), true);
      EXPECT_TRUE(rep.ok());
      EXPECT_EQ(rep.fixed_points, 0u) << a << "," << k;
    }
}

TEST(Cut, RestrictCombineRoundTrip) {
  for (auto [a, inner] : std::vector<std::pair<int, LabeledGraph>>{{4, cycle_graph(3)}, {3, path_graph(3)}, {3, clique_graph(3)}}) {
    LabeledGraph g = graph_sum(cycle_graph(a), inner);
    for (const auto& f : enumerate_forest_triples(g)) {
      Restriction parts = restrict_at_cut(f, a);
      EXPECT_TRUE(is_forest_triple(inner, parts.on_rest)) << to_string(f);
      EXPECT_EQ(min_triple(parts.on_rest).r, 1);
      EXPECT_EQ(combine_at_cut(parts.on_cycle, parts.on_rest, a), f) << to_string(f);
    }
  }
}

TEST(Cut, RestrictionOfHandCheckedTriple) {
  // C_3 + P_3 with cut tree {2,3,4,5}, α = (3,1), r = 2.
  LabeledGraph g = graph_sum(cycle_graph(3), path_graph(3));
  ForestTriple f({TreeTriple{0b00001, 0, {1}, 1}, TreeTriple{0b11110, 0b11010, {3, 1}, 2}});
  ASSERT_TRUE(is_forest_triple(g, f));
  Restriction parts = restrict_at_cut(f, 3);
  EXPECT_EQ(triple_containing(parts.on_cycle, 3)->alpha, (Composition{2}));
  EXPECT_EQ(triple_containing(parts.on_cycle, 3)->r, 2);
  EXPECT_EQ(min_triple(parts.on_rest).alpha, (Composition{2, 1}));
  EXPECT_EQ(min_triple(parts.on_rest).r, 1);
}

TEST(Cut, CombineValidation) {
  ForestTriple cyc({TreeTriple{0b111, 0b011, {3}, 1}});
  EXPECT_THROW(combine_at_cut(cyc, ForestTriple({TreeTriple{0b11, 0b1, {2}, 2}}), 3), domain_error);
  EXPECT_THROW(combine_at_cut(ForestTriple({TreeTriple{0b011, 0b1, {2}, 1}}), ForestTriple({TreeTriple{0b1, 0, {1}, 1}}), 3),
               domain_error);
}

TEST(ComposedInvolution, AuditOnCycleChains) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {3, 4}, {2, 3}, {3, 2}, {2, 2}}) {
    LabeledGraph g = graph_sum(cycle_graph(a), cycle_graph(b));
    auto rep = audit_involution(enumerate_forest_triples(g), make_composed_involution(a, cycle_graph(b), make_cycle_involution(b)), true);
    EXPECT_TRUE(rep.ok()) << a << "+" << b << ": " << (rep.ok() ? "" : rep.violations.front().axiom);
    EXPECT_EQ(signed_type_sum(rep.fixed), csf_forest_triples(g));
  }
}

TEST(ComposedInvolution, AuditWithTabulatedInner) {
  for (const LabeledGraph& inner : {path_graph(3), clique_graph(3), path_graph(2)}) {
    auto tab = make_tabulated_involution(enumerate_forest_triples(inner));
    ASSERT_TRUE(tab.has_value());
    LabeledGraph g = graph_sum(cycle_graph(4), inner);
    auto rep = audit_involution(enumerate_forest_triples(g), make_composed_involution(4, inner, *tab), true);
    EXPECT_TRUE(rep.ok()) << (rep.ok() ? "" : rep.violations.front().axiom);
  }
}

TEST(TabulatedInvolution, AuditsCleanOnSmallGraphs) {
  for (const LabeledGraph& g : {path_graph(3), clique_graph(3), clique_graph(4), path_graph(4), cycle_graph(4)}) {
    auto domain = enumerate_forest_triples(g);
    auto tab = make_tabulated_involution(domain);
    ASSERT_TRUE(tab.has_value()) << to_graph_text(g);
    auto rep = audit_involution(domain, *tab, true);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(signed_type_sum(rep.fixed), csf_forest_triples(g));
  }
}

TEST(TabulatedInvolution, FailsWithoutEnoughNegatives) {
  // The claw K_{1,3} is not e-positive.
  LabeledGraph claw = star_graph(4);
  auto domain = enumerate_forest_triples(claw);
  EXPECT_FALSE(csf_forest_triples(claw).is_nonnegative());
  EXPECT_FALSE(make_tabulated_involution(domain).has_value());
}

TEST(Audit, DetectsBrokenMaps) {
  auto domain = enumerate_forest_triples(cycle_graph(3));
  auto identity = audit_involution(domain, [](const ForestTriple& f) { return f; }, true);
  EXPECT_FALSE(identity.ok());
  std::set<std::string> axioms;
  for (const auto& v : identity.violations) axioms.insert(v.axiom);
  EXPECT_TRUE(axioms.count("fixed point with negative sign"));
  EXPECT_TRUE(axioms.count("fixed point is not unit"));
  auto thrower = audit_involution(domain, [](const ForestTriple&) -> ForestTriple { throw domain_error("boom"); }, false, 5);
  EXPECT_EQ(thrower.violations.size(), 5u);
  EXPECT_EQ(thrower.violations.front().axiom, "map raised: boom");
}
