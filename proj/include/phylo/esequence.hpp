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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phylo/metric_space.hpp"
#include "phylo/quiver.hpp"

namespace phylo {

/// A binary relation on {0, ..., n-1}, stored densely.
class Relation {
 public:
  explicit Relation(std::size_t n = 0) : n_(n), bits_(n * n, false) {}

  std::size_t size() const { return n_; }
  bool holds(std::size_t a, std::size_t b) const { return bits_.at(a * n_ + b); }
  void add(std::size_t a, std::size_t b) { bits_.at(a * n_ + b) = true; }
  bool empty() const;

  /// Pairs in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  Relation transitive_closure() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

/// Position of an element: level m and index within P_m.
struct Node {
  std::size_t level;
  std::size_t index;

  friend bool operator==(const Node&, const Node&) = default;
  friend auto operator<=>(const Node&, const Node&) = default;
};

/// Graded sets P_0, ..., P_T with parental maps p: P_m -> P_{m-1} and a strict
/// order on each level.
///
/// The constructor only checks shape (sizes, indices, unique labels); the
/// E-sequence axioms are checked by validate_esequence so that violating
/// sequences can still be represented and reported.
class ESequence {
 public:
  /// parent[m][i] is the index in level m-1 of p(element i of level m);
  /// parent[0] must be empty. order[m] is the strict order on level m.
  ESequence(std::vector<std::vector<std::string>> levels,
            std::vector<std::vector<std::size_t>> parent, std::vector<Relation> order);

  /// Builds from labels; `parent` maps each non-root label to its parent's,
  /// `order` lists pairs (a, b) meaning a < b. The order is transitively
  /// closed unless `close` is false.
  static ESequence from_labels(std::vector<std::vector<std::string>> levels,
                               const std::vector<std::pair<std::string, std::string>>& parent,
                               const std::vector<std::pair<std::string, std::string>>& order,
                               bool close = true);

  std::size_t level_count() const { return levels_.size(); }
  /// T, the index of the last level.
  std::size_t top() const { return levels_.size() - 1; }
  std::size_t width(std::size_t m) const { return levels_.at(m).size(); }
  std::size_t element_count() const;

  const std::vector<std::string>& level(std::size_t m) const { return levels_.at(m); }
  const std::string& label(Node n) const { return levels_.at(n.level).at(n.index); }
  std::optional<Node> find(const std::string& label) const;
  /// Throws InputError for an unknown label.
  Node node(const std::string& label) const;

  /// p(i) for i in level m >= 1, as an index into level m-1.
  std::size_t parent(std::size_t m, std::size_t i) const { return parent_.at(m).at(i); }
  /// p^k of element i of level m, as an index into level m-k.
  std::size_t ancestor(std::size_t m, std::size_t i, std::size_t k) const;
  const Relation& order(std::size_t m) const { return order_.at(m); }
  bool less(std::size_t m, std::size_t a, std::size_t b) const { return order_.at(m).holds(a, b); }

  const std::vector<std::vector<std::size_t>>& parents() const { return parent_; }
  const std::vector<Relation>& orders() const { return order_; }

  /// Levels 0..n only.
  ESequence truncate(std::size_t n) const;

 private:
  std::vector<std::vector<std::string>> levels_;
  std::vector<std::vector<std::size_t>> parent_;
  std::vector<Relation> order_;
};

/// Human-readable descriptions of every broken axiom; empty iff E is an
/// E-sequence (trivial order on P_0, a < b implies p(a) = p(b), each order
/// irreflexive, antisymmetric and transitive).
std::vector<std::string> validate_esequence(const ESequence& e);

/// Isotypy classes of a phylogenetic quiver grouped by height, with parental
/// maps read off universal evolutions and level orders from reachability.
/// Classes are labelled by the label of their least member id and each level
/// is sorted by that id. Throws PreconditionError on a non-phylogenetic quiver.
ESequence evolutionary_sequence(const Quiver& q);

/// Where each vertex of `q` sits in evolutionary_sequence(q).
std::vector<Node> vertex_placement(const Quiver& q, const ESequence& e);

/// Vertices are the elements; an edge a -> b whenever b < a, and a -> p(a).
/// Throws ValidationError if E is not an E-sequence.
Quiver realize_esequence(const ESequence& e);

/// The evolutionary forest: one tree per element of P_0, edges a -- p(a).
class Forest {
 public:
  explicit Forest(ESequence e) : e_(std::move(e)) {}

  const ESequence& sequence() const { return e_; }
  std::size_t root_count() const { return e_.width(0); }
  bool is_tree() const { return root_count() == 1; }

 private:
  ESequence e_;
};

Forest build_forest(const ESequence& e);

/// k + l for the least k, l with p^k(a) = p^l(b); nullopt when a and b lie in
/// different trees.
std::optional<std::size_t> forest_distance(const Forest& f, Node a, Node b);
std::optional<std::size_t> forest_distance(const Forest& f, const std::string& a,
                                           const std::string& b);

/// rho on P_n: the least k with p^k(a) = p^k(b). Needs card(P_0) = 1 and every
/// p up to level n surjective; throws PreconditionError otherwise.
MetricSpace terminal_ultrametric(const ESequence& e, std::size_t n);

/// a precedes b iff a != b and p^{k-1}(a) < p^{k-1}(b) where k = rho(a, b).
/// Indices follow level n. Same preconditions as terminal_ultrametric.
Relation induce_prec(const ESequence& e, std::size_t n);

/// Violations of the axioms characterising relations that arise from
/// induce_prec: integer rho in {0..n}, asymmetry, and the three closure rules
/// for distinct triples. Throws InputError if `rho` is not ultrametric.
std::vector<std::string> validate_prec(const MetricSpace& rho, const Relation& prec,
                                       std::size_t n);

/// Rebuilds levels 0..n from (P_n, rho, prec): P_s is the set of closed balls
/// of radius n - s, p sends a ball to the ball of the next radius containing
/// it, and B < B' iff a prec b with rho(a, b) = radius + 1. P_n keeps the point
/// labels; other balls are labelled "s<level>:" followed by their members
/// joined with '+'. Throws ValidationError when validate_prec complains.
ESequence reconstruct(const MetricSpace& rho, const Relation& prec, std::size_t n);

/// Level-wise bijections commuting with p and preserving the orders. Orders
/// are compared after transitive closure.
bool esequence_isomorphic(const ESequence& a, const ESequence& b);

}  // namespace phylo
