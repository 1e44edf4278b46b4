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

#include "phylo/quiver.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "phylo/error.hpp"

namespace phylo {
namespace {

constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();

std::vector<VertexId> unique_sorted(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Iterative Tarjan. Components come out in reverse topological order; they
// are renumbered afterwards by minimal member.
std::vector<std::vector<VertexId>> strongly_connected_components(
    const std::vector<std::vector<VertexId>>& succ) {
  const std::size_t n = succ.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> components;
  std::size_t counter = 0;

  struct Frame {
    VertexId v;
    std::size_t next;
  };
  std::vector<Frame> frames;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < succ[f.v].size()) {
        VertexId w = succ[f.v][f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      VertexId v = f.v;
      frames.pop_back();
      if (!frames.empty()) {
        VertexId parent = frames.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        std::vector<VertexId> comp;
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

std::vector<bool> reach(const Quiver& q, VertexId start, bool forward) {
  std::vector<bool> seen(q.vertex_count(), false);
  std::vector<VertexId> todo{start};
  seen[start] = true;
  while (!todo.empty()) {
    VertexId v = todo.back();
    todo.pop_back();
    for (VertexId w : forward ? q.successors(v) : q.predecessors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<VertexId> to_list(const std::vector<bool>& mask) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < mask.size(); ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

}  // namespace

Quiver::Quiver(std::vector<std::string> labels, std::vector<Edge> edges,
               std::vector<std::string> edge_labels)
    : labels_(std::move(labels)), edges_(std::move(edges)), edge_labels_(std::move(edge_labels)) {
  if (labels_.empty()) throw InputError("a quiver needs at least one vertex");
  if (!edge_labels_.empty() && edge_labels_.size() != edges_.size())
    throw InputError("edge label count does not match edge count");
  const std::size_t n = labels_.size();
  for (VertexId v = 0; v < n; ++v) {
    if (!index_.emplace(labels_[v], v).second)
      throw InputError("duplicate vertex label '" + labels_[v] + "'");
  }
  out_.resize(n);
  in_.resize(n);
  succ_.resize(n);
  pred_.resize(n);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.tail >= n || edge.head >= n)
      throw InputError("edge " + std::to_string(e) + " has an endpoint outside the vertex set");
    out_[edge.tail].push_back(e);
    in_[edge.head].push_back(e);
    succ_[edge.tail].push_back(edge.head);
    pred_[edge.head].push_back(edge.tail);
  }
  for (VertexId v = 0; v < n; ++v) {
    succ_[v] = unique_sorted(std::move(succ_[v]));
    pred_[v] = unique_sorted(std::move(pred_[v]));
  }

  auto cond = std::make_shared<Condensation>();
  cond->members_ = strongly_connected_components(succ_);
  cond->class_of_.assign(n, 0);
  for (std::size_t c = 0; c < cond->members_.size(); ++c)
    for (VertexId v : cond->members_[c]) cond->class_of_[v] = c;
  cond->successors_.resize(cond->members_.size());
  cond->internal_.assign(cond->members_.size(), false);
  for (const Edge& edge : edges_) {
    std::size_t a = cond->class_of_[edge.tail];
    std::size_t b = cond->class_of_[edge.head];
    if (a == b)
      cond->internal_[a] = true;
    else
      cond->successors_[a].push_back(b);
  }
  for (auto& s : cond->successors_) s = unique_sorted(std::move(s));
  condensation_ = std::move(cond);
}

Quiver Quiver::unlabeled(std::size_t n, std::vector<Edge> edges) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return Quiver(std::move(labels), std::move(edges));
}

Quiver Quiver::from_labels(std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& edges) {
  std::unordered_map<std::string, VertexId> index;
  for (VertexId v = 0; v < labels.size(); ++v) index.emplace(labels[v], v);
  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw InputError("edge refers to unknown vertex '" + s + "'");
    return it->second;
  };
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [tail, head] : edges) list.push_back({lookup(tail), lookup(head)});
  return Quiver(std::move(labels), std::move(list));
}

const std::string& Quiver::label(VertexId v) const {
  check_vertex(v);
  return labels_[v];
}

std::optional<VertexId> Quiver::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Quiver::vertex(std::string_view label) const {
  auto v = find(label);
  if (!v) throw InputError("unknown vertex '" + std::string(label) + "'");
  return *v;
}

const std::string& Quiver::edge_label(EdgeId e) const {
  static const std::string kEmpty;
  if (e >= edges_.size()) throw InputError("unknown edge id " + std::to_string(e));
  return edge_labels_.empty() ? kEmpty : edge_labels_[e];
}

std::span<const EdgeId> Quiver::out_edges(VertexId v) const {
  check_vertex(v);
  return out_[v];
}

std::span<const EdgeId> Quiver::in_edges(VertexId v) const {
  check_vertex(v);
  return in_[v];
}

std::span<const VertexId> Quiver::successors(VertexId v) const {
  check_vertex(v);
  return succ_[v];
}

std::span<const VertexId> Quiver::predecessors(VertexId v) const {
  check_vertex(v);
  return pred_[v];
}

std::optional<EdgeId> Quiver::find_edge(VertexId tail, VertexId head) const {
  check_vertex(tail);
  check_vertex(head);
  for (EdgeId e : out_[tail])
    if (edges_[e].head == head) return e;
  return std::nullopt;
}

void Quiver::check_vertex(VertexId v) const {
  if (v >= labels_.size()) throw InputError("unknown vertex id " + std::to_string(v));
}

Evolution validate_evolution(const Quiver& q, std::vector<VertexId> vertices,
                             std::vector<EdgeId> edges) {
  if (vertices.empty()) throw InputError("an evolution has at least one vertex");
  for (VertexId v : vertices) q.check_vertex(v);
  if (edges.size() + 1 != vertices.size())
    throw ValidationError("an evolution on " + std::to_string(vertices.size()) +
                          " vertices needs " + std::to_string(vertices.size() - 1) +
                          " edges, got " + std::to_string(edges.size()));
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    EdgeId e = edges[k - 1];
    if (e >= q.edge_count() || q.edge(e).tail != vertices[k] || q.edge(e).head != vertices[k - 1])
      throw EvolutionError("step " + std::to_string(k) + ": edge " + std::to_string(e) +
                               " does not lead from " + q.label(vertices[k]) + " to " +
                               q.label(vertices[k - 1]),
                           k);
  }
  return Evolution(std::move(vertices), std::move(edges));
}

Evolution validate_evolution(const Quiver& q, std::vector<VertexId> vertices) {
  if (vertices.empty()) throw InputError("an evolution has at least one vertex");
  std::vector<EdgeId> edges;
  edges.reserve(vertices.size() - 1);
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    auto e = q.find_edge(vertices[k], vertices[k - 1]);
    if (!e)
      throw EvolutionError("step " + std::to_string(k) + ": no edge from " +
                               q.label(vertices[k]) + " to " + q.label(vertices[k - 1]),
                           k);
    edges.push_back(*e);
  }
  return validate_evolution(q, std::move(vertices), std::move(edges));
}

Evolution concat(const Evolution& alpha, const Evolution& beta) {
  if (alpha.terminal() != beta.initial())
    throw ValidationError("cannot concatenate: terminal vertex of the first evolution is not "
                          "the initial vertex of the second");
  std::vector<VertexId> vertices(alpha.vertices_);
  vertices.insert(vertices.end(), beta.vertices_.begin() + 1, beta.vertices_.end());
  std::vector<EdgeId> edges(alpha.edges_);
  edges.insert(edges.end(), beta.edges_.begin(), beta.edges_.end());
  return Evolution(std::move(vertices), std::move(edges));
}

bool ancestor_of(const Quiver& q, VertexId a, VertexId b) {
  q.check_vertex(a);
  q.check_vertex(b);
  const Condensation& c = q.condensation();
  if (c.class_of(a) == c.class_of(b)) return true;
  return reach(q, b, true)[a];
}

bool isotypic(const Quiver& q, VertexId a, VertexId b) {
  q.check_vertex(a);
  q.check_vertex(b);
  return q.condensation().class_of(a) == q.condensation().class_of(b);
}

Condensation condense(const Quiver& q) { return q.condensation(); }

std::vector<VertexId> ancestors(const Quiver& q, VertexId x) {
  q.check_vertex(x);
  return to_list(reach(q, x, true));
}

std::vector<VertexId> descendants(const Quiver& q, VertexId x) {
  q.check_vertex(x);
  return to_list(reach(q, x, false));
}

Quiver induced_subquiver(const Quiver& q, std::vector<VertexId> keep, std::vector<VertexId>* host) {
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw InputError("duplicate vertex in sub-quiver selection");
  std::vector<std::size_t> local(q.vertex_count(), kUnvisited);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    q.check_vertex(keep[i]);
    local[keep[i]] = i;
    labels.push_back(q.label(keep[i]));
  }
  std::vector<Edge> edges;
  std::vector<std::string> edge_labels;
  for (EdgeId e = 0; e < q.edge_count(); ++e) {
    const Edge& edge = q.edge(e);
    if (local[edge.tail] == kUnvisited || local[edge.head] == kUnvisited) continue;
    edges.push_back({local[edge.tail], local[edge.head]});
    if (q.has_edge_labels()) edge_labels.push_back(q.edge_label(e));
  }
  if (host) *host = keep;
  return Quiver(std::move(labels), std::move(edges), std::move(edge_labels));
}

}  // namespace phylo
