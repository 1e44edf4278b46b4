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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace phylo {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// An edge points from a descendant (tail) to one of its direct ancestors (head).
/// An evolution step A_{k-1} <- A_k uses an edge with tail A_k and head A_{k-1}.
struct Edge {
  VertexId tail;
  VertexId head;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Strongly connected components of a quiver (its isotypy classes) and the
/// acyclic digraph they span.
///
/// Classes are numbered by their minimal member id, so class 0 holds vertex 0.
class Condensation {
 public:
  std::size_t class_count() const { return members_.size(); }
  std::size_t class_of(VertexId v) const { return class_of_[v]; }
  const std::vector<VertexId>& members(std::size_t c) const { return members_[c]; }

  /// Classes reached by a single edge leaving class `c` (deduplicated, sorted).
  const std::vector<std::size_t>& successors(std::size_t c) const { return successors_[c]; }

  /// True iff some quiver edge has both endpoints in class `c`.
  bool has_internal_edge(std::size_t c) const { return internal_[c]; }

  /// A sink class has no outgoing class edges; its members are the primitive vertices.
  bool is_sink(std::size_t c) const { return successors_[c].empty(); }

 private:
  friend class Quiver;

  std::vector<std::size_t> class_of_;
  std::vector<std::vector<VertexId>> members_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<bool> internal_;
};

/// A finite directed multigraph with uniquely labelled vertices.
///
/// Loops and parallel edges are allowed. The quiver is immutable once built and
/// its condensation is computed up front, so a `Quiver` can be shared freely
/// between readers.
class Quiver {
 public:
  /// Throws InputError on an empty vertex set, duplicate labels or dangling edges.
  Quiver(std::vector<std::string> labels, std::vector<Edge> edges,
         std::vector<std::string> edge_labels = {});

  /// Vertices labelled "0".."n-1".
  static Quiver unlabeled(std::size_t n, std::vector<Edge> edges);

  /// Builds from (tail label, head label) pairs; labels must be listed in `labels`.
  static Quiver from_labels(std::vector<std::string> labels,
                            const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& label(VertexId v) const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<VertexId> find(std::string_view label) const;
  /// Looks a label up; throws InputError if it is unknown.
  VertexId vertex(std::string_view label) const;

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  /// Empty string for unlabeled edges.
  const std::string& edge_label(EdgeId e) const;
  bool has_edge_labels() const { return !edge_labels_.empty(); }

  std::span<const EdgeId> out_edges(VertexId v) const;
  std::span<const EdgeId> in_edges(VertexId v) const;
  /// Distinct heads of edges leaving `v`, sorted.
  std::span<const VertexId> successors(VertexId v) const;
  /// Distinct tails of edges entering `v`, sorted.
  std::span<const VertexId> predecessors(VertexId v) const;

  /// Lowest-numbered edge with the given endpoints.
  std::optional<EdgeId> find_edge(VertexId tail, VertexId head) const;
  bool has_edge(VertexId tail, VertexId head) const { return find_edge(tail, head).has_value(); }

  const Condensation& condensation() const { return *condensation_; }

  /// Throws InputError unless `v` names a vertex.
  void check_vertex(VertexId v) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::string> edge_labels_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<VertexId>> succ_;
  std::vector<std::vector<VertexId>> pred_;
  std::shared_ptr<const Condensation> condensation_;
};

/// A validated directed path A_0 <- A_1 <- ... <- A_m, listed ancestor-first.
class Evolution {
 public:
  std::span<const VertexId> vertices() const { return vertices_; }
  /// edges()[k-1] is the edge with tail A_k and head A_{k-1}.
  std::span<const EdgeId> edges() const { return edges_; }
  VertexId initial() const { return vertices_.front(); }
  VertexId terminal() const { return vertices_.back(); }
  std::size_t length() const { return edges_.size(); }
  VertexId operator[](std::size_t k) const { return vertices_[k]; }

  friend bool operator==(const Evolution&, const Evolution&) = default;

 private:
  Evolution(std::vector<VertexId> vertices, std::vector<EdgeId> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {}

  friend Evolution validate_evolution(const Quiver&, std::vector<VertexId>,
                                      std::vector<EdgeId>);
  friend Evolution concat(const Evolution&, const Evolution&);

  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
};

/// Checks every step against `q`. Throws EvolutionError naming the first bad
/// step k (no edge with tail A_k, head A_{k-1}); InputError on unknown ids or an
/// empty sequence.
Evolution validate_evolution(const Quiver& q, std::vector<VertexId> vertices,
                             std::vector<EdgeId> edges);

/// Same, picking the lowest-numbered edge for each step.
Evolution validate_evolution(const Quiver& q, std::vector<VertexId> vertices);

/// Requires terminal(alpha) == initial(beta); throws ValidationError otherwise.
Evolution concat(const Evolution& alpha, const Evolution& beta);

/// A <= B: some evolution starts at A and terminates at B, i.e. B reaches A.
bool ancestor_of(const Quiver& q, VertexId a, VertexId b);

/// A ~ B: A <= B and B <= A.
bool isotypic(const Quiver& q, VertexId a, VertexId b);

/// Copy of the quiver's condensation.
Condensation condense(const Quiver& q);

/// Vertices reachable from `x` (its ancestors), sorted, including `x`.
std::vector<VertexId> ancestors(const Quiver& q, VertexId x);

/// Vertices that reach `x` (its descendants), sorted, including `x`.
std::vector<VertexId> descendants(const Quiver& q, VertexId x);

/// Sub-quiver induced on `keep` (any order, no duplicates). Vertex i of the
/// result is keep[i] after sorting; `host` receives that correspondence.
Quiver induced_subquiver(const Quiver& q, std::vector<VertexId> keep,
                         std::vector<VertexId>* host = nullptr);

}  // namespace phylo
