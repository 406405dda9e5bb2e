#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "csf/forest_triples.hpp"

using namespace csf;

namespace {

LabeledGraph random_graph(std::mt19937& rng, int n, double p) {
  std::vector<Edge> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (std::uniform_real_distribution<>(0, 1)(rng) < p) edges.push_back({u, v});
  std::shuffle(edges.begin(), edges.end(), rng);
  return LabeledGraph(n, std::move(edges));
}

LabeledGraph shuffled_edges(const LabeledGraph& g, std::mt19937& rng) {
  std::vector<int> perm(static_cast<std::size_t>(g.edge_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return g.with_edge_order(perm);
}

ESym parse_terms(std::initializer_list<std::pair<Partition, int>> terms) {
  ESym out;
  for (const auto& [p, c] : terms) out.add_term(p, c);
  return out;
}

}  // namespace

TEST(TripleStats, TypeSignUnit) {
  ForestTriple f({TreeTriple{0b011, 0b1, {1, 1}, 1}, TreeTriple{0b100, 0, {1}, 1}});
  EXPECT_EQ(triple_type(f), (Partition{1, 1, 1}));
  EXPECT_EQ(triple_sign(f), -1);
  EXPECT_FALSE(is_unit(f));
  EXPECT_EQ(type_prime(f), (Partition{1, 1}));
  EXPECT_EQ(min_triple(f).alpha, (Composition{1, 1}));
  EXPECT_EQ(triple_containing(f, 3)->alpha, (Composition{1}));
  EXPECT_EQ(triple_containing(f, 4), nullptr);
  EXPECT_THROW(min_triple(ForestTriple({TreeTriple{0b10, 0, {1}, 1}})), domain_error);
}

TEST(TripleStats, CanonicalOrderPutsVertexOneFirst) {
  ForestTriple f({TreeTriple{0b100, 0, {1}, 1}, TreeTriple{0b011, 0b1, {2}, 2}});
  EXPECT_TRUE(f.trees.front().contains(1));
}

TEST(ForestTriples, PathOnTwoVertices) {
  LabeledGraph p2 = path_graph(2);
  auto all = enumerate_forest_triples(p2);
  EXPECT_EQ(all.size(), 4u);
  EXPECT_EQ(signed_type_sum(all), e(2) * Integer(2));
  EXPECT_EQ(csf_forest_triples(p2), e(2) * Integer(2));
}

TEST(ForestTriples, KnownExpansions) {
  EXPECT_EQ(csf_forest_triples(cycle_graph(3)), e(3) * Integer(6));
  EXPECT_EQ(csf_forest_triples(clique_graph(3)), e(3) * Integer(6));
  EXPECT_EQ(csf_forest_triples(path_graph(3)), parse_terms({{{3}, 3}, {{2, 1}, 1}}));
  EXPECT_EQ(csf_forest_triples(cycle_graph(6)), parse_terms({{{6}, 30}, {{4, 2}, 18}, {{3, 3}, 12}, {{2, 2, 2}, 2}}));
  EXPECT_EQ(csf_forest_triples(empty_graph(2)), e(Partition{1, 1}));
  EXPECT_EQ(csf_forest_triples(empty_graph(0)), ESym::constant(1));
}

TEST(ForestTriples, CycleCounts) {
  const std::vector<int> expected{0, 0, 4, 24, 104, 400, 1456, 5152, 17952};
  for (int a = 2; a <= 8; ++a) {
    EXPECT_EQ(count_forest_triples(cycle_graph(a)), expected[static_cast<std::size_t>(a)]) << a;
    if (a <= 6) {
      EXPECT_EQ(enumerate_forest_triples(cycle_graph(a)).size(), static_cast<std::size_t>(expected[static_cast<std::size_t>(a)]));
    }
  }
}

TEST(ForestTriples, EnumeratedMembersAreValidAndDistinct) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    LabeledGraph g = random_graph(rng, 4 + trial % 2, 0.6);
    auto all = enumerate_forest_triples(g);
    std::set<ForestTriple> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
    EXPECT_EQ(Integer(all.size()), count_forest_triples(g));
    for (const auto& f : all) {
      std::string why;
      EXPECT_TRUE(is_forest_triple(g, f, &why)) << why;
    }
  }
}

TEST(ForestTriples, StructuralCheckRejects) {
  LabeledGraph g = cycle_graph(3);
  std::string why;
  // Root index above α₁.
  EXPECT_FALSE(is_forest_triple(g, ForestTriple({TreeTriple{0b111, 0b011, {2, 1}, 3}}), &why));
  // Broken circuit {(1,2),(2,3)} of C3.
  EXPECT_FALSE(is_forest_triple(g, ForestTriple({TreeTriple{0b111, 0b011, {3}, 1}}), &why));
  EXPECT_EQ(why, "edges do not form an NBC forest");
  // Composition sum mismatch.
  EXPECT_FALSE(is_forest_triple(g, ForestTriple({TreeTriple{0b111, 0b110, {2}, 1}}), &why));
  // Missing vertex.
  EXPECT_FALSE(is_forest_triple(g, ForestTriple({TreeTriple{0b011, 0b000, {2}, 1}}), &why));
  EXPECT_TRUE(is_forest_triple(g, ForestTriple({TreeTriple{0b111, 0b110, {1, 2}, 1}}), &why));
}

TEST(ForestTriples, FactorizedMatchesLiteral) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    LabeledGraph g = random_graph(rng, 3 + trial % 4, 0.55);
    EXPECT_EQ(csf_forest_triples(g), csf_forest_triples_literal(g)) << to_graph_text(g);
    for (int i = 1; i <= g.vertex_count(); ++i) EXPECT_EQ(csf_i(g, i), csf_i_literal(g, i));
  }
}

TEST(ForestTriples, IndependentOfEdgeOrder) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    LabeledGraph g = random_graph(rng, 5 + trial % 2, 0.5);
    EXPECT_EQ(csf_forest_triples(g), csf_forest_triples(shuffled_edges(g, rng)));
  }
}

TEST(ForestTriples, PiecesAssembleToWhole) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    LabeledGraph g = random_graph(rng, 3 + trial % 5, 0.5);
    auto pieces = csf_i_all(g);
    EXPECT_EQ(assemble_from_pieces(pieces), csf_forest_triples(g));
    for (int i = 1; i <= g.vertex_count(); ++i) {
      const auto& x = pieces[static_cast<std::size_t>(i)];
      if (!x.is_zero()) {
        EXPECT_EQ(x.degree(), g.vertex_count() - i);
      }
    }
  }
}

TEST(ForestTriples, PieceRange) {
  EXPECT_THROW(csf_i(cycle_graph(3), 0), domain_error);
  EXPECT_THROW(csf_i(cycle_graph(3), 4), domain_error);
  EXPECT_EQ(csf_i(cycle_graph(3), 3), ESym::constant(2));
  EXPECT_TRUE(ft_i_members(cycle_graph(3), 4).empty());
}

TEST(ForestTriples, EnumerationCap) {
  EXPECT_THROW(enumerate_forest_triples(cycle_graph(5), 100), resource_error);
  EXPECT_NO_THROW(enumerate_forest_triples(cycle_graph(5), 400));
}

TEST(FtPrime, MembersSatisfyAttachmentConditions) {
  CutAttachment host = attach_tree(cycle_graph(3), path_graph(2));
  EXPECT_EQ(host.cut_vertex, 3);
  EXPECT_EQ(host.k, 2);
  auto members = ft_prime_members(host);
  EXPECT_EQ(members.size(), 32u);
  std::size_t filtered = 0;
  for (const auto& f : enumerate_forest_triples(host.graph)) {
    const TreeTriple* t = triple_containing(f, 3);
    if (t->contains(4) && t->alpha.back() >= 2) ++filtered;
  }
  EXPECT_EQ(filtered, members.size());
}

TEST(FtPrime, RejectsNonTrees) {
  EXPECT_THROW(attach_tree(cycle_graph(3), cycle_graph(3)), domain_error);
  EXPECT_THROW(attach_tree(cycle_graph(3), empty_graph(2)), domain_error);
  EXPECT_NO_THROW(attach_tree(cycle_graph(3), path_graph(1)));
}
