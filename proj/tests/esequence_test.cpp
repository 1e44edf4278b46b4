// Copyright 2026 The Phylo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phylo/error.hpp"
#include "phylo/esequence.hpp"
#include "phylo/generators.hpp"
#include "properties.hpp"

namespace phylo {
namespace {

// P0 = {r}, P1 = {a, b}, P2 = {a1, a2, b1}.
ESequence fixture(bool ordered = false) {
  std::vector<std::pair<std::string, std::string>> order;
  if (ordered) order.emplace_back("a", "b");
  return ESequence::from_labels({{"r"}, {"a", "b"}, {"a1", "a2", "b1"}},
                                {{"a", "r"}, {"b", "r"}, {"a1", "a"}, {"a2", "a"}, {"b1", "b"}},
                                order);
}

MetricSpace space(std::vector<std::string> labels, std::vector<std::vector<long>> d) {
  MetricSpace::Matrix m(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) m(i, j) = Rational(d[i][j]);
  return MetricSpace(std::move(labels), std::move(m));
}

TEST(ESequence, ShapeChecks) {
  EXPECT_THROW(ESequence({}, {}, {}), InputError);
  EXPECT_THROW(ESequence::from_labels({{"r"}, {"a"}}, {}, {}), InputError);
  EXPECT_THROW(ESequence::from_labels({{"r"}, {"a"}}, {{"a", "a"}}, {}), InputError);
  EXPECT_THROW(ESequence::from_labels({{"r"}, {"r"}}, {{"r", "r"}}, {}), InputError);
  EXPECT_THROW(ESequence::from_labels({{"r"}, {"a"}}, {{"a", "r"}}, {{"a", "r"}}), InputError);
  ESequence e = fixture();
  EXPECT_EQ(e.element_count(), 6u);
  EXPECT_EQ(e.ancestor(2, e.node("b1").index, 2), 0u);
  EXPECT_EQ(e.truncate(1).level_count(), 2u);
}

TEST(EvolutionarySequence, SurjectionQuiver) {
  ESequence e = evolutionary_sequence(gen_surjection_quiver(5));
  ASSERT_EQ(e.level_count(), 2u);
  EXPECT_EQ(e.level(0), std::vector<std::string>{"[1]"});
  EXPECT_EQ(e.level(1), (std::vector<std::string>{"[2]", "[3]", "[4]", "[5]"}));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(e.parent(1, i), 0u);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(e.less(1, i, j), i < j);
  }
  EXPECT_TRUE(validate_esequence(e).empty());
}

TEST(EvolutionarySequence, MapQuiverIsOnePoint) {
  ESequence e = evolutionary_sequence(gen_map_quiver(4));
  EXPECT_EQ(e.level_count(), 1u);
  EXPECT_EQ(e.width(0), 1u);
  EXPECT_TRUE(build_forest(e).is_tree());
}

TEST(EvolutionarySequence, SingleVertexAndRejections) {
  ESequence e = evolutionary_sequence(Quiver::unlabeled(1, {}));
  EXPECT_EQ(e.level_count(), 1u);
  EXPECT_EQ(e.width(0), 1u);
  EXPECT_THROW(evolutionary_sequence(gen_g3()), PreconditionError);
  EXPECT_THROW(evolutionary_sequence(gen_abnormal()), PreconditionError);
}

TEST(EvolutionarySequence, RootedTreeForestIsTheTree) {
  Quiver t = gen_rooted_tree_quiver({{"r", "a"}, {"a", "b"}, {"r", "c"}, {"a", "d"}}, "r");
  ESequence e = evolutionary_sequence(t);
  auto at = vertex_placement(t, e);
  for (const Edge& edge : t.edges()) {
    Node child = at[edge.tail], par = at[edge.head];
    EXPECT_EQ(child.level, par.level + 1);
    EXPECT_EQ(e.parent(child.level, child.index), par.index);
  }
  EXPECT_EQ(e.element_count(), t.vertex_count());
}

TEST(Validate, Violations) {
  EXPECT_TRUE(validate_esequence(fixture(true)).empty());
  // a1 < b1 although p(a1) = a and p(b1) = b.
  ESequence cross = ESequence::from_labels(
      {{"r"}, {"a", "b"}, {"a1", "a2", "b1"}},
      {{"a", "r"}, {"b", "r"}, {"a1", "a"}, {"a2", "a"}, {"b1", "b"}}, {{"a1", "b1"}});
  EXPECT_EQ(validate_esequence(cross).size(), 1u);
  ESequence root_order = ESequence::from_labels({{"r", "s"}}, {}, {{"r", "s"}});
  EXPECT_EQ(validate_esequence(root_order).size(), 1u);
  ESequence cyclic = ESequence::from_labels({{"r"}, {"a", "b"}}, {{"a", "r"}, {"b", "r"}},
                                            {{"a", "b"}, {"b", "a"}}, false);
  EXPECT_FALSE(validate_esequence(cyclic).empty());
  ESequence open = ESequence::from_labels({{"r"}, {"a", "b", "c"}},
                                          {{"a", "r"}, {"b", "r"}, {"c", "r"}},
                                          {{"a", "b"}, {"b", "c"}}, false);
  EXPECT_EQ(validate_esequence(open).size(), 1u);
  EXPECT_THROW(realize_esequence(cross), ValidationError);
}

TEST(Realize, ChainAndUniversalEvolutions) {
  Quiver q = realize_esequence(ESequence::from_labels({{"r"}, {"a"}}, {{"a", "r"}}, {}));
  EXPECT_EQ(q.vertex_count(), 2u);
  ASSERT_EQ(q.edge_count(), 1u);
  EXPECT_EQ(q.edge(0), (Edge{q.vertex("a"), q.vertex("r")}));

  ESequence e = fixture(true);
  Quiver r = realize_esequence(e);
  EXPECT_TRUE(r.has_edge(r.vertex("b"), r.vertex("a")));
  for (const char* leaf : {"a1", "a2", "b1"}) {
    auto u = universal_evolution(r, r.vertex(leaf));
    ASSERT_TRUE(u);
    Node n = e.node(leaf);
    for (std::size_t k = 0; k <= 2; ++k)
      EXPECT_EQ(r.label((*u)[2 - k]), e.level(2 - k)[e.ancestor(2, n.index, k)]);
  }
}

TEST(Forest, Distances) {
  Forest f = build_forest(fixture());
  EXPECT_EQ(forest_distance(f, "a1", "a2"), 2u);
  EXPECT_EQ(forest_distance(f, "a1", "b1"), 4u);
  EXPECT_EQ(forest_distance(f, "a", "a"), 0u);
  EXPECT_EQ(forest_distance(f, "a1", "r"), 2u);
  EXPECT_THROW(forest_distance(f, "a1", "zz"), InputError);
  Forest two = build_forest(ESequence::from_labels({{"r", "s"}, {"a"}}, {{"a", "r"}}, {}));
  EXPECT_FALSE(two.is_tree());
  EXPECT_FALSE(forest_distance(two, "a", "s").has_value());
}

TEST(Terminal, UltrametricAndPrec) {
  ESequence e = fixture();
  MetricSpace rho = terminal_ultrametric(e, 2);
  auto id = [&](const char* l) { return e.node(l).index; };
  EXPECT_EQ(rho(id("a1"), id("a2")), Rational(1));
  EXPECT_EQ(rho(id("a1"), id("b1")), Rational(2));
  EXPECT_TRUE(validate_space(rho).is_ultrametric);
  EXPECT_TRUE(induce_prec(e, 2).empty());

  ESequence ordered = fixture(true);
  Relation prec = induce_prec(ordered, 2);
  EXPECT_TRUE(prec.holds(id("a1"), id("b1")));
  EXPECT_TRUE(prec.holds(id("a2"), id("b1")));
  EXPECT_FALSE(prec.holds(id("b1"), id("a1")));
  EXPECT_FALSE(prec.holds(id("a1"), id("a2")));
  EXPECT_TRUE(validate_prec(rho, prec, 2).empty());

  ESequence leaf = ESequence::from_labels({{"r"}, {"a"}}, {{"a", "r"}}, {});
  EXPECT_EQ(terminal_ultrametric(leaf, 1).size(), 1u);
  EXPECT_THROW(terminal_ultrametric(e, 3), PreconditionError);
  ESequence gap = ESequence::from_labels({{"r"}, {"a", "b"}, {"a1"}},
                                         {{"a", "r"}, {"b", "r"}, {"a1", "a"}}, {});
  EXPECT_THROW(terminal_ultrametric(gap, 2), PreconditionError);
  EXPECT_NO_THROW(terminal_ultrametric(gap, 1));
  ESequence roots = ESequence::from_labels({{"r", "s"}, {"a", "b"}}, {{"a", "r"}, {"b", "s"}}, {});
  EXPECT_THROW(induce_prec(roots, 1), PreconditionError);
}

TEST(ValidatePrec, Violations) {
  MetricSpace rho = space({"x", "y", "z"}, {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}});
  Relation sym(3);
  sym.add(0, 1);
  sym.add(1, 0);
  EXPECT_FALSE(validate_prec(rho, sym, 2).empty());
  EXPECT_FALSE(validate_prec(rho, Relation(3), 1).empty());
  EXPECT_TRUE(validate_prec(rho, Relation(3), 2).empty());
  // x precedes z at distance 2 but y, closer to x, does not.
  Relation loose(3);
  loose.add(0, 2);
  EXPECT_FALSE(validate_prec(rho, loose, 2).empty());
  MetricSpace flat = space({"x", "y", "z"}, {{0, 3, 4}, {3, 0, 5}, {4, 5, 0}});
  EXPECT_THROW(validate_prec(flat, Relation(3), 5), InputError);
  EXPECT_THROW(reconstruct(rho, sym, 2), ValidationError);
}

TEST(Reconstruct, Examples) {
  ESequence e = fixture(true);
  ESequence back = reconstruct(terminal_ultrametric(e, 2), induce_prec(e, 2), 2);
  EXPECT_TRUE(esequence_isomorphic(back, e));
  EXPECT_EQ(back.level(2), e.level(2));
  EXPECT_EQ(back.level(0), std::vector<std::string>{"s0:a1+a2+b1"});

  MetricSpace one = space({"x"}, {{0}});
  ESequence chain = reconstruct(one, Relation(1), 3);
  EXPECT_EQ(chain.level_count(), 4u);
  for (std::size_t m = 0; m < 4; ++m) EXPECT_EQ(chain.width(m), 1u);

  MetricSpace pair = space({"x", "y"}, {{0, 1}, {1, 0}});
  ESequence two = reconstruct(pair, Relation(2), 1);
  ASSERT_EQ(two.level_count(), 2u);
  EXPECT_EQ(two.width(0), 1u);
  EXPECT_EQ(two.level(1), (std::vector<std::string>{"x", "y"}));
  EXPECT_TRUE(two.order(1).empty());
}

TEST(Isomorphism, Basics) {
  ESequence e = fixture(true);
  EXPECT_TRUE(esequence_isomorphic(e, e));
  ESequence relabeled = ESequence::from_labels(
      {{"R"}, {"B", "A"}, {"B1", "A2", "A1"}},
      {{"A", "R"}, {"B", "R"}, {"A1", "A"}, {"A2", "A"}, {"B1", "B"}}, {{"A", "B"}});
  EXPECT_TRUE(esequence_isomorphic(e, relabeled));
  ESequence reversed = ESequence::from_labels(
      {{"R"}, {"B", "A"}, {"B1", "A2", "A1"}},
      {{"A", "R"}, {"B", "R"}, {"A1", "A"}, {"A2", "A"}, {"B1", "B"}}, {{"B", "A"}});
  EXPECT_FALSE(esequence_isomorphic(e, reversed));
  EXPECT_FALSE(esequence_isomorphic(e, fixture(false)));
  EXPECT_FALSE(esequence_isomorphic(e, e.truncate(1)));
}

class ESequenceProperty : public ::testing::TestWithParam<int> {};

TEST_P(ESequenceProperty, IsomorphismMatchesPermutationOracle) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  RandomESequenceOptions o{3, 3, 0.5, false, false};
  ESequence a = gen_random_esequence(o, seed);
  ESequence b = gen_random_esequence(o, seed + 1000);
  EXPECT_EQ(esequence_isomorphic(a, b), oracle::isomorphic(a, b));
  EXPECT_TRUE(esequence_isomorphic(a, a));
  // Reverse every level; p and < are carried along, so the result is isomorphic.
  std::vector<std::vector<std::string>> levels;
  std::vector<std::pair<std::string, std::string>> parents, order;
  for (std::size_t m = 0; m < a.level_count(); ++m) {
    levels.emplace_back(a.level(m).rbegin(), a.level(m).rend());
    for (std::size_t i = 0; i < a.width(m); ++i) {
      if (m > 0) parents.emplace_back(a.level(m)[i], a.level(m - 1)[a.parent(m, i)]);
      for (std::size_t j = 0; j < a.width(m); ++j)
        if (a.less(m, i, j)) order.emplace_back(a.level(m)[i], a.level(m)[j]);
    }
  }
  EXPECT_TRUE(esequence_isomorphic(a, ESequence::from_labels(levels, parents, order)));
}

TEST_P(ESequenceProperty, GeneratedSequencesAreValidAndRoundTrip) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  ESequence e = gen_random_esequence({1 + seed % 5, 8, 0.4, false, false}, seed);
  EXPECT_TRUE(validate_esequence(e).empty());
  EXPECT_EQ(props::realization_round_trip(e), "");
  EXPECT_EQ(props::forest_metric(e), "");
  ESequence rooted = gen_random_esequence({1 + seed % 5, 8, 0.4, true, true}, seed + 50);
  EXPECT_EQ(props::reconstruction_round_trip(rooted), "");
  EXPECT_EQ(props::forest_metric(rooted), "");
}

TEST_P(ESequenceProperty, PhylogeneticQuiversGiveESequences) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  Quiver q = gen_random_phylogenetic({4 + seed % 7, 0.35, 0.3}, seed + 300);
  ESequence e = evolutionary_sequence(q);
  EXPECT_TRUE(validate_esequence(e).empty());
  EXPECT_EQ(props::class_order_properties(q), "");
  EXPECT_EQ(e.element_count(), q.condensation().class_count());
}

INSTANTIATE_TEST_SUITE_P(Seeds, ESequenceProperty, ::testing::Range(0, 30));

}  // namespace
}  // namespace phylo
