#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "csf/forest_triples.hpp"
#include "csf/json.hpp"
#include "csf/oracle.hpp"

using namespace csf;

namespace {

MonomialSym m(std::initializer_list<std::pair<Partition, int>> list) {
  MonomialSym out;
  for (const auto& [p, c] : list) out.add_term(p, c);
  return out;
}

LabeledGraph random_graph(std::mt19937& rng, int n, double p) {
  std::vector<Edge> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (std::uniform_real_distribution<>(0, 1)(rng) < p) edges.push_back({u, v});
  return LabeledGraph(n, std::move(edges));
}

LabeledGraph relabeled(const LabeledGraph& g, const std::vector<int>& perm) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[static_cast<std::size_t>(e.u - 1)], perm[static_cast<std::size_t>(e.v - 1)]});
  return LabeledGraph(g.vertex_count(), std::move(edges));
}

}  // namespace

TEST(Partitions, Counts) {
  const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(partitions_of(n).size(), p[static_cast<std::size_t>(n)]);
  EXPECT_EQ(partitions_of(3), (std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}}));
}

TEST(ColoringOracle, SmallGraphs) {
  EXPECT_EQ(csf_coloring_oracle(path_graph(2)), m({{{1, 1}, 2}}));
  EXPECT_EQ(csf_coloring_oracle(path_graph(1)), m({{{1}, 1}}));
  EXPECT_EQ(csf_coloring_oracle(path_graph(3)), m({{{2, 1}, 1}, {{1, 1, 1}, 6}}));
  // Parallel edges act as a single constraint.
  EXPECT_EQ(csf_coloring_oracle(cycle_graph(2)), csf_coloring_oracle(path_graph(2)));
}

TEST(ColoringOracle, EdgelessIsPowerOfE1) {
  for (int n = 1; n <= 6; ++n) {
    ESym e1n = ESym::constant(1);
    for (int j = 0; j < n; ++j) e1n *= e(1);
    EXPECT_EQ(csf_coloring_oracle(empty_graph(n)), e_to_monomial(e1n, n));
  }
}

TEST(ColoringOracle, AgreesWithBruteForce) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    LabeledGraph g = random_graph(rng, 1 + trial % 6, 0.5);
    EXPECT_EQ(csf_coloring_oracle(g), csf_coloring_bruteforce(g)) << to_graph_text(g);
  }
  EXPECT_EQ(csf_coloring_oracle(cycle_graph(7)), csf_coloring_bruteforce(cycle_graph(7)));
}

TEST(ColoringOracle, InvariantUnderRelabeling) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    LabeledGraph g = random_graph(rng, 5, 0.5);
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<int> perm(5);
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);
      EXPECT_EQ(csf_coloring_oracle(relabeled(g, perm)), csf_coloring_oracle(g));
    }
  }
}

TEST(ColoringOracle, Caps) {
  EXPECT_THROW(csf_coloring_oracle(cycle_graph(13)), resource_error);
  EXPECT_THROW(csf_coloring_bruteforce(cycle_graph(9)), resource_error);
  EXPECT_NO_THROW(csf_coloring_oracle(cycle_graph(5), 5));
}

TEST(EToMonomial, HandExpansions) {
  EXPECT_EQ(e_to_monomial(e(2), 2), m({{{1, 1}, 1}}));
  EXPECT_EQ(e_to_monomial(e(2) * Integer(2), 2), csf_coloring_oracle(path_graph(2)));
  EXPECT_EQ(e_to_monomial(e(Partition{2, 1}), 3), m({{{2, 1}, 1}, {{1, 1, 1}, 3}}));
  for (int k = 1; k <= 8; ++k) {
    std::vector<int> ones(static_cast<std::size_t>(k), 1);
    EXPECT_EQ(e_to_monomial(e(k), k), MonomialSym::basis(Partition(ones)));
  }
  EXPECT_THROW(e_to_monomial(e(3), 2), domain_error);
}

TEST(EToMonomial, Linear) {
  ESym x = e(Partition{3, 1}) * Integer(4) - e(Partition{2, 2});
  ESym y = e(Partition{2, 1, 1}) + e(4) * Integer(7);
  EXPECT_EQ(e_to_monomial(x + y, 4), e_to_monomial(x, 4) + e_to_monomial(y, 4));
}

TEST(EToMonomial, InverseRoundTrip) {
  for (int n = 1; n <= 8; ++n)
    for (const auto& lambda : partitions_of(n)) EXPECT_EQ(monomial_to_e(e_to_monomial(e(lambda), n)), e(lambda));
}

TEST(CheckEqual, Examples) {
  EXPECT_TRUE(check_equal(csf_forest_triples(path_graph(2)), path_graph(2)));
  EXPECT_TRUE(check_equal(csf_forest_triples(cycle_graph(6)), cycle_graph(6)));
  EXPECT_FALSE(check_equal(csf_forest_triples(cycle_graph(6)) + e(6), cycle_graph(6)));
}

TEST(CheckEqual, ForestTriplesOnRandomGraphs) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    LabeledGraph g = random_graph(rng, 2 + trial % 6, 0.5);
    EXPECT_TRUE(check_equal(csf_forest_triples(g), g)) << to_graph_text(g);
    EXPECT_EQ(csf_oracle_e(g), csf_forest_triples(g));
  }
}

TEST(Positivity, Reports) {
  PositivityReport claw = positivity(csf_forest_triples(star_graph(4)));
  EXPECT_FALSE(claw.positive);
  ASSERT_EQ(claw.negative_terms.size(), 1u);
  EXPECT_EQ(claw.negative_terms.front().first, (Partition{2, 2}));
  EXPECT_EQ(claw.negative_terms.front().second, -2);
  for (int a = 2; a <= 8; ++a) EXPECT_TRUE(positivity(csf_forest_triples(cycle_graph(a))).positive);
}

TEST(Json, TermsAndBigIntegers) {
  ESym x = e(Partition{4, 2}) * Integer(18) + e(6) * Integer(30);
  EXPECT_EQ(expansion_to_json(x, 6).dump(), R"({"degree":6,"terms":{"6":30,"4,2":18},"e_positive":true})");
  EXPECT_EQ(integer_to_json(Integer("9223372036854775807")).dump(), "9223372036854775807");
  EXPECT_EQ(integer_to_json(Integer("9223372036854775808")).dump(), "\"9223372036854775808\"");
  EXPECT_EQ(integer_to_json(Integer(-5)).dump(), "-5");
  EXPECT_EQ(terms_to_json(ESym::constant(2)).dump(), R"({"":2})");
}
