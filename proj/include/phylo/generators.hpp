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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "phylo/esequence.hpp"
#include "phylo/metric_space.hpp"
#include "phylo/quiver.hpp"

namespace phylo {

/// Non-empty sets [1]..[n] with one edge [k] -> [j] per ordered pair. With
/// `all_maps`, one labelled edge per map instead (n <= 5).
Quiver gen_map_quiver(std::size_t n, bool all_maps = false);

/// Sets [1]..[n] with an edge [k] -> [j] iff j <= k. With `all_maps`, one
/// labelled edge per surjection (n <= 5).
Quiver gen_surjection_quiver(std::size_t n, bool all_maps = false);

/// Orients an undirected tree toward `root`. Vertices appear in order of first
/// mention (root first). Throws InputError unless the edges form a tree.
Quiver gen_rooted_tree_quiver(const std::vector<std::pair<std::string, std::string>>& tree,
                              const std::string& root);

/// A, B, C with edges B -> A, B -> C, C -> B.
Quiver gen_g3();
/// Monotonous; R has critical ancestors Q1, Q2 of equal height in distinct classes.
Quiver gen_abnormal();
/// Q -> P, R -> Q, S -> R, S -> P.
Quiver gen_nonmonotonous();
/// Q -> P, S -> Q, S -> P, R -> S, R -> P; Q is not regular.
Quiver gen_irregular();

struct RandomQuiverOptions {
  std::size_t vertices = 8;
  /// Probability of an edge i -> j for i > j.
  double density = 0.25;
  /// Multiplier on `density` for i <= j (loops and back edges).
  double back_ratio = 1.0;
};

/// Labels v0..v{n-1}.
Quiver gen_random_quiver(const RandomQuiverOptions& options, std::uint64_t seed);
Quiver gen_random_monotonous(const RandomQuiverOptions& options, std::uint64_t seed);
/// Retries with derived seeds until the phylogenetic core of a monotonized
/// random quiver passes is_phylogenetic_quiver.
Quiver gen_random_phylogenetic(const RandomQuiverOptions& options, std::uint64_t seed);

/// Hierarchical clustering with `depth` merge levels and increasing rational
/// level values; points p0..p{n-1}.
MetricSpace gen_random_ultrametric(std::size_t n, std::size_t depth, std::uint64_t seed);

/// Entries in {1, 3/2, ..., 4}, each drawn by rejection against the triangle
/// inequality with earlier entries. Throws Error when the retry cap is hit.
MetricSpace gen_random_metric(std::size_t n, std::uint64_t seed);

struct RandomESequenceOptions {
  std::size_t levels = 3;
  std::size_t max_width = 6;
  double order_density = 0.3;
  bool single_root = false;
  bool surjective = false;
};

/// Orders are drawn inside parental fibres only. Labels e<level>_<index>.
ESequence gen_random_esequence(const RandomESequenceOptions& options, std::uint64_t seed);

}  // namespace phylo
