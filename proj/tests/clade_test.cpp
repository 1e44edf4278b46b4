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

#include "phylo/clade.hpp"
#include "phylo/error.hpp"
#include "phylo/esequence.hpp"
#include "phylo/generators.hpp"

namespace phylo {
namespace {

TEST(Clade, G3CladeOfB) {
  Quiver g = gen_g3();
  Clade c = clade(g, g.vertex("B"));
  EXPECT_EQ(c.quiver.vertex_count(), 2u);
  EXPECT_EQ(c.quiver.edge_count(), 2u);
  EXPECT_TRUE(c.contains(g.vertex("C")));
  EXPECT_FALSE(c.contains(g.vertex("A")));
  for (VertexId v = 0; v < 2; ++v) EXPECT_TRUE(is_primitive(c.quiver, v));
  EXPECT_THROW(c.local(g.vertex("A")), InputError);
  EXPECT_TRUE(is_regular(g, g.vertex("B")));
  EXPECT_EQ(clade_height_direct(g, g.vertex("B"), g.vertex("C")), 0u);
  // G3 is not a phylogenetic quiver, so the formulas do not apply.
  EXPECT_THROW(clade_height(g, g.vertex("B"), g.vertex("C")), PreconditionError);
}

TEST(Clade, PrimitiveSinkApex) {
  Quiver t = gen_rooted_tree_quiver({{"r", "a"}, {"a", "b"}, {"r", "c"}}, "r");
  Clade whole = clade(t, t.vertex("r"));
  EXPECT_EQ(whole.quiver.vertex_count(), 4u);
  Clade sub = clade(t, t.vertex("a"));
  EXPECT_EQ(sub.host_vertex, (std::vector<VertexId>{t.vertex("a"), t.vertex("b")}));
  EXPECT_EQ(clade_height(t, t.vertex("a"), t.vertex("b")), 1u);
  EXPECT_EQ(clade_height(t, t.vertex("a"), t.vertex("a")), 0u);
  EXPECT_THROW(clade_height(t, t.vertex("a"), t.vertex("c")), InputError);
}

TEST(Clade, IrregularFixture) {
  Quiver q = gen_irregular();
  ASSERT_TRUE(is_phylogenetic_quiver(q));
  VertexId qv = q.vertex("Q"), r = q.vertex("R");
  EXPECT_FALSE(is_regular(q, qv));
  EXPECT_TRUE(is_regular(q, q.vertex("P")));
  EXPECT_TRUE(ancestor_of(q, qv, r));
  EXPECT_THROW(clade_height(q, qv, r), PreconditionError);
  EXPECT_EQ(clade_height_direct(q, qv, r), 2u);
}

TEST(Clade, OffsetPlusOneBranch) {
  // r; a < b on level 1. The realization has b -> a, so b is a same-height
  // descendant of a that is not isotypic to it.
  ESequence e = ESequence::from_labels({{"r"}, {"a", "b"}}, {{"a", "r"}, {"b", "r"}}, {{"a", "b"}});
  Quiver q = realize_esequence(e);
  VertexId a = q.vertex("a"), b = q.vertex("b");
  ASSERT_TRUE(is_phylogenetic_quiver(q));
  ASSERT_TRUE(is_regular(q, a));
  EXPECT_EQ(clade_height(q, a, b), 1u);
  EXPECT_EQ(clade_height_direct(q, a, b), 1u);
}

class CladeProperty : public ::testing::TestWithParam<int> {};

TEST_P(CladeProperty, PhylogeneticWithMatchingHeights) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  Quiver q = gen_random_phylogenetic({4 + seed % 7, 0.35, 0.3}, seed + 77);
  const HeightTable h = heights(q);
  for (VertexId a = 0; a < q.vertex_count(); ++a) {
    Clade c = clade(q, a);
    const HeightTable ha = c.heights();
    for (VertexId local = 0; local < c.quiver.vertex_count(); ++local) {
      VertexId b = c.host_vertex[local];
      EXPECT_EQ(is_primitive(c.quiver, local), isotypic(q, a, b));
      EXPECT_GE(h[b], h[a]);
      EXPECT_GE(ha[local], h[b] - h[a]);
    }
    if (!is_regular(q, a)) continue;
    EXPECT_TRUE(is_phylogenetic_quiver(c.quiver));
    for (VertexId b : descendants(q, a))
      EXPECT_EQ(clade_height(q, a, b), clade_height_direct(q, a, b));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CladeProperty, ::testing::Range(0, 30));

}  // namespace
}  // namespace phylo
