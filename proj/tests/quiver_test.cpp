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

#include <functional>

#include "oracles.hpp"
#include "phylo/error.hpp"
#include "phylo/generators.hpp"
#include "phylo/quiver.hpp"

namespace phylo {
namespace {

std::vector<VertexId> ids(const Quiver& q, std::initializer_list<const char*> names) {
  std::vector<VertexId> out;
  for (const char* n : names) out.push_back(q.vertex(n));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Quiver, RejectsBadInput) {
  EXPECT_THROW(Quiver({}, {}), InputError);
  EXPECT_THROW(Quiver({"A", "A"}, {}), InputError);
  EXPECT_THROW(Quiver({"A"}, {{0, 1}}), InputError);
  EXPECT_THROW(Quiver({"A", "B"}, {{0, 1}}, {"x", "y"}), InputError);
  EXPECT_THROW(Quiver::from_labels({"A"}, {{"A", "Z"}}), InputError);
}

TEST(Quiver, KeepsParallelEdgesAndLoops) {
  Quiver q({"A", "B"}, {{1, 0}, {1, 0}, {0, 0}});
  EXPECT_EQ(q.edge_count(), 3u);
  EXPECT_EQ(q.successors(1).size(), 1u);
  EXPECT_EQ(*q.find_edge(1, 0), 0u);
  EXPECT_TRUE(q.has_edge(0, 0));
}

TEST(Quiver, AncestorOfG3) {
  Quiver g = gen_g3();
  VertexId a = g.vertex("A"), b = g.vertex("B"), c = g.vertex("C");
  EXPECT_TRUE(ancestor_of(g, a, b));
  EXPECT_FALSE(ancestor_of(g, b, a));
  for (VertexId x : {a, b, c}) EXPECT_TRUE(ancestor_of(g, x, x));
  EXPECT_THROW(ancestor_of(g, a, 7), InputError);
}

TEST(Quiver, IsotypicExamples) {
  Quiver g = gen_g3();
  EXPECT_TRUE(isotypic(g, g.vertex("B"), g.vertex("C")));
  EXPECT_TRUE(isotypic(g, g.vertex("A"), g.vertex("A")));
  Quiver s = gen_surjection_quiver(5);
  EXPECT_FALSE(isotypic(s, s.vertex("[2]"), s.vertex("[3]")));
}

TEST(Quiver, CondenseG3) {
  Quiver g = gen_g3();
  Condensation c = condense(g);
  ASSERT_EQ(c.class_count(), 2u);
  std::size_t ka = c.class_of(g.vertex("A")), kb = c.class_of(g.vertex("B"));
  EXPECT_EQ(c.class_of(g.vertex("C")), kb);
  EXPECT_EQ(c.members(kb), ids(g, {"B", "C"}));
  EXPECT_EQ(c.successors(kb), std::vector<std::size_t>{ka});
  EXPECT_TRUE(c.successors(ka).empty());
  EXPECT_TRUE(c.has_internal_edge(kb));
  EXPECT_FALSE(c.has_internal_edge(ka));
}

TEST(Quiver, CondenseTrivialShapes) {
  Condensation edgeless = condense(Quiver::unlabeled(4, {}));
  EXPECT_EQ(edgeless.class_count(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(edgeless.successors(k).empty());
  Condensation cycle = condense(Quiver::unlabeled(3, {{0, 1}, {1, 2}, {2, 0}}));
  EXPECT_EQ(cycle.class_count(), 1u);
  EXPECT_TRUE(cycle.has_internal_edge(0));
}

TEST(Quiver, AncestorsAndDescendants) {
  Quiver g = gen_g3();
  EXPECT_EQ(ancestors(g, g.vertex("C")), ids(g, {"A", "B", "C"}));
  EXPECT_EQ(descendants(g, g.vertex("A")), ids(g, {"A", "B", "C"}));
  EXPECT_EQ(ancestors(g, g.vertex("A")), ids(g, {"A"}));
}

TEST(Evolution, Validation) {
  Quiver g = gen_g3();
  VertexId a = g.vertex("A"), b = g.vertex("B"), c = g.vertex("C");
  Evolution ab = validate_evolution(g, {a, b});
  EXPECT_EQ(ab.length(), 1u);
  EXPECT_EQ(ab.initial(), a);
  EXPECT_EQ(ab.terminal(), b);
  EXPECT_EQ(validate_evolution(g, {c}).length(), 0u);
  try {
    validate_evolution(g, {a, b, a});
    FAIL() << "expected EvolutionError";
  } catch (const EvolutionError& e) {
    EXPECT_EQ(e.step(), 2u);
  }
  EXPECT_THROW(validate_evolution(g, {a, c}), EvolutionError);
  EXPECT_THROW(validate_evolution(g, {}), InputError);
}

TEST(Evolution, ExplicitEdgeChoice) {
  Quiver q({"A", "B"}, {{1, 0}, {1, 0}});
  Evolution e = validate_evolution(q, {0, 1}, {1});
  EXPECT_EQ(e.edges()[0], 1u);
  EXPECT_THROW(validate_evolution(q, {0, 1}, {2}), EvolutionError);
  EXPECT_THROW(validate_evolution(q, {0, 1}, {}), ValidationError);
}

TEST(Evolution, Concat) {
  Quiver g = gen_g3();
  VertexId a = g.vertex("A"), b = g.vertex("B"), c = g.vertex("C");
  Evolution abc = concat(validate_evolution(g, {a, b}), validate_evolution(g, {b, c}));
  EXPECT_EQ(abc, validate_evolution(g, {a, b, c}));
  EXPECT_EQ(abc.terminal(), c);
  EXPECT_EQ(abc.length(), 2u);
  EXPECT_EQ(concat(validate_evolution(g, {a}), abc), abc);
  EXPECT_THROW(concat(abc, validate_evolution(g, {a, b})), ValidationError);
}

TEST(Quiver, InducedSubquiverKeepsLabelsAndEdges) {
  Quiver q({"A", "B", "C"}, {{1, 0}, {2, 1}, {2, 0}}, {"x", "y", "z"});
  std::vector<VertexId> host;
  Quiver sub = induced_subquiver(q, {2, 0}, &host);
  EXPECT_EQ(host, (std::vector<VertexId>{0, 2}));
  ASSERT_EQ(sub.edge_count(), 1u);
  EXPECT_EQ(sub.label(sub.edge(0).tail), "C");
  EXPECT_EQ(sub.edge_label(0), "z");
}

class RandomQuiverProperty : public ::testing::TestWithParam<int> {};

TEST_P(RandomQuiverProperty, PreorderAndIsotypyAgreeWithClosure) {
  const int seed = GetParam();
  Quiver q = gen_random_quiver({3 + static_cast<std::size_t>(seed) % 10, 0.2, 0.6},
                               static_cast<std::uint64_t>(seed));
  const auto reach = oracle::closure(q);
  const Condensation& c = q.condensation();
  const std::size_t n = q.vertex_count();
  for (VertexId a = 0; a < n; ++a) {
    EXPECT_TRUE(ancestor_of(q, a, a));
    for (VertexId b = 0; b < n; ++b) {
      EXPECT_EQ(ancestor_of(q, a, b), static_cast<bool>(reach[b][a]));
      const bool iso = isotypic(q, a, b);
      EXPECT_EQ(iso, ancestor_of(q, a, b) && ancestor_of(q, b, a));
      EXPECT_EQ(iso, c.class_of(a) == c.class_of(b));
      EXPECT_EQ(iso, ancestors(q, a) == ancestors(q, b));
      EXPECT_EQ(iso, descendants(q, a) == descendants(q, b));
      for (VertexId d = 0; d < n; ++d)
        if (ancestor_of(q, a, b) && ancestor_of(q, b, d)) EXPECT_TRUE(ancestor_of(q, a, d));
    }
  }
  // The class digraph is acyclic: successors always lead to other classes
  // and no class reaches itself through them.
  for (std::size_t k = 0; k < c.class_count(); ++k)
    for (std::size_t s : c.successors(k)) {
      EXPECT_NE(s, k);
      EXPECT_FALSE(ancestor_of(q, c.members(k).front(), c.members(s).front()));
    }
}

TEST_P(RandomQuiverProperty, IntermediateVerticesOfIsotypicEvolutionsAreIsotypic) {
  const int seed = GetParam();
  Quiver q = gen_random_quiver({6, 0.3, 0.8}, static_cast<std::uint64_t>(seed) + 100);
  for (VertexId x = 0; x < q.vertex_count(); ++x) {
    // Walk every path of length <= 4 starting at x; when it returns to x's
    // class, all vertices on it lie in that class.
    std::vector<VertexId> path{x};
    std::function<void()> walk = [&]() {
      if (isotypic(q, path.front(), path.back()))
        for (VertexId v : path) EXPECT_TRUE(isotypic(q, v, x));
      if (path.size() > 4) return;
      for (VertexId w : q.successors(path.back())) {
        path.push_back(w);
        walk();
        path.pop_back();
      }
    };
    walk();
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomQuiverProperty, ::testing::Range(0, 25));

}  // namespace
}  // namespace phylo
