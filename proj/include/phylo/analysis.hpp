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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phylo/quiver.hpp"

namespace phylo {

/// h(X) for every vertex, indexed by VertexId. Always finite on a finite quiver.
using HeightTable = std::vector<std::size_t>;

/// True iff every ancestor of `a` is isotypic to it, i.e. its class is a sink.
bool is_primitive(const Quiver& q, VertexId a);

/// Shortest evolution length from a primitive vertex to each vertex.
HeightTable heights(const Quiver& q);
std::size_t height(const Quiver& q, VertexId x);

/// No edge climbs in height: h(tail) >= h(head) for every edge.
bool is_monotonous(const Quiver& q);
bool is_monotonous(const Quiver& q, const HeightTable& h);

/// Indices k < m with h(A_{k+1}) = h(A_k) + 1.
std::vector<std::size_t> critical_vertices(const Quiver& q, const Evolution& evo);

/// Vertices A with an edge A1 -> A such that h(A1) = h(A) + 1 and B reaches A1.
/// Sorted by id.
std::vector<VertexId> critical_ancestors(const Quiver& q, VertexId b);
std::vector<VertexId> critical_ancestors(const Quiver& q, const HeightTable& h, VertexId b);

/// Critical ancestors of equal height are pairwise isotypic.
bool is_normal(const Quiver& q, VertexId b);
bool is_normal(const Quiver& q, const HeightTable& h, VertexId b);

/// True iff alpha's vertices occur, in order and up to isotypy, as a
/// subsequence of beta's.
bool embeds_in(const Quiver& q, const Evolution& alpha, const Evolution& beta);

/// Visits every evolution of length h(x) from a primitive vertex to `x`
/// (distinct vertex sequences; the lowest-numbered edge is used per step).
/// Evolutions arrive in lexicographic order of their vertex sequences.
/// Return false from `visit` to stop early.
void for_each_short_full_evolution(const Quiver& q, VertexId x,
                                   const std::function<bool(const Evolution&)>& visit);

/// Collects for_each_short_full_evolution; throws SizeGuardError past `limit`.
std::vector<Evolution> short_full_evolutions(const Quiver& q, VertexId x,
                                             std::size_t limit = 100000);

/// Lexicographically least short full evolution for `x`.
Evolution least_short_full_evolution(const Quiver& q, VertexId x);

enum class Verdict { kPhylogenetic, kNotPhylogenetic, kUndecided };

std::string to_string(Verdict v);

/// On a monotonous quiver a vertex is phylogenetic iff it is normal. Elsewhere
/// normality is only sufficient, and a non-normal vertex yields kUndecided.
Verdict phylogenetic_verdict(const Quiver& q, VertexId x);

/// Boolean form of phylogenetic_verdict; throws UndecidedError on kUndecided.
bool is_phylogenetic_vertex(const Quiver& q, VertexId x);

/// A universal evolution for `x` when one exists (the least short full
/// evolution), std::nullopt when `x` is not phylogenetic. Throws
/// UndecidedError when that cannot be decided.
std::optional<Evolution> universal_evolution(const Quiver& q, VertexId x);

/// Does `alpha` embed in every full evolution for its terminal vertex of
/// length at most `max_length`?
///
/// The search walks away from the terminal vertex X while greedily matching
/// alpha from its right end, so its state is (vertex, matched suffix length).
/// A path of length <= max_length that stops at a primitive vertex with alpha
/// only partially matched is exactly a full evolution alpha fails to embed in.
/// This covers the same set of evolutions as enumerating every path, without
/// the exponential blow-up. Throws SizeGuardError once more than `node_budget`
/// states are visited, PreconditionError if alpha is not a full evolution.
///
/// This is a bounded test, not a proof of universality.
bool verify_universal_bounded(const Quiver& q, const Evolution& alpha, std::size_t max_length,
                              std::size_t node_budget = 1'000'000);

/// Drops every edge with h(tail) < h(head). Heights and primitives survive.
Quiver monotonize(const Quiver& q);

/// Induced sub-quiver on the phylogenetic vertices. Throws PreconditionError
/// on a non-monotonous quiver.
Quiver phylogenetic_core(const Quiver& q);

/// Monotonous with every vertex normal (finite quivers are small and all
/// heights are finite).
bool is_phylogenetic_quiver(const Quiver& q);

struct VertexReport {
  VertexId id;
  std::string label;
  bool primitive;
  std::size_t height;
  bool normal;
  Verdict phylogenetic;
  std::size_t isotypy_class;
  std::vector<VertexId> critical_ancestors;
};

struct AnalysisReport {
  std::vector<VertexReport> vertices;
  bool monotonous;
  bool phylogenetic_quiver;
  std::size_t isotypy_class_count;
};

AnalysisReport analyze(const Quiver& q);

}  // namespace phylo
