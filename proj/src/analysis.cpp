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

#include "phylo/analysis.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "phylo/error.hpp"

namespace phylo {
namespace {

constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

// layers[k] = vertices of height k lying on some shortest path from x down to
// a primitive vertex; layers[h(x)] = {x}.
std::vector<std::vector<bool>> shortest_path_layers(const Quiver& q, const HeightTable& h,
                                                    VertexId x) {
  const std::size_t m = h[x];
  std::vector<std::vector<bool>> layers(m + 1, std::vector<bool>(q.vertex_count(), false));
  layers[m][x] = true;
  for (std::size_t k = m; k > 0; --k) {
    for (VertexId v = 0; v < q.vertex_count(); ++v) {
      if (!layers[k][v]) continue;
      for (VertexId w : q.successors(v))
        if (h[w] == k - 1) layers[k - 1][w] = true;
    }
  }
  return layers;
}

}  // namespace

bool is_primitive(const Quiver& q, VertexId a) {
  q.check_vertex(a);
  const Condensation& c = q.condensation();
  return c.is_sink(c.class_of(a));
}

HeightTable heights(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  HeightTable h(n, kInfinite);
  std::deque<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    if (is_primitive(q, v)) {
      h[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : q.predecessors(v)) {
      if (h[w] == kInfinite) {
        h[w] = h[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return h;
}

std::size_t height(const Quiver& q, VertexId x) {
  q.check_vertex(x);
  return heights(q)[x];
}

bool is_monotonous(const Quiver& q) { return is_monotonous(q, heights(q)); }

bool is_monotonous(const Quiver& q, const HeightTable& h) {
  return std::all_of(q.edges().begin(), q.edges().end(),
                     [&](const Edge& e) { return h[e.tail] >= h[e.head]; });
}

std::vector<std::size_t> critical_vertices(const Quiver& q, const Evolution& evo) {
  HeightTable h = heights(q);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < evo.length(); ++k)
    if (h[evo[k + 1]] == h[evo[k]] + 1) out.push_back(k);
  return out;
}

std::vector<VertexId> critical_ancestors(const Quiver& q, VertexId b) {
  q.check_vertex(b);
  return critical_ancestors(q, heights(q), b);
}

std::vector<VertexId> critical_ancestors(const Quiver& q, const HeightTable& h, VertexId b) {
  std::vector<bool> reachable(q.vertex_count(), false);
  for (VertexId v : ancestors(q, b)) reachable[v] = true;
  std::vector<bool> critical(q.vertex_count(), false);
  for (const Edge& e : q.edges())
    if (reachable[e.tail] && h[e.tail] == h[e.head] + 1) critical[e.head] = true;
  std::vector<VertexId> out;
  for (VertexId v = 0; v < q.vertex_count(); ++v)
    if (critical[v]) out.push_back(v);
  return out;
}

bool is_normal(const Quiver& q, VertexId b) {
  q.check_vertex(b);
  return is_normal(q, heights(q), b);
}

bool is_normal(const Quiver& q, const HeightTable& h, VertexId b) {
  const Condensation& c = q.condensation();
  std::map<std::size_t, std::size_t> class_at_height;
  for (VertexId a : critical_ancestors(q, h, b)) {
    auto [it, inserted] = class_at_height.emplace(h[a], c.class_of(a));
    if (!inserted && it->second != c.class_of(a)) return false;
  }
  return true;
}

bool embeds_in(const Quiver& q, const Evolution& alpha, const Evolution& beta) {
  std::size_t matched = 0;
  for (VertexId b : beta.vertices()) {
    if (matched == alpha.vertices().size()) break;
    if (isotypic(q, alpha[matched], b)) ++matched;
  }
  return matched == alpha.vertices().size();
}

void for_each_short_full_evolution(const Quiver& q, VertexId x,
                                   const std::function<bool(const Evolution&)>& visit) {
  q.check_vertex(x);
  const HeightTable h = heights(q);
  const auto layers = shortest_path_layers(q, h, x);
  const std::size_t m = h[x];

  std::vector<VertexId> path;
  bool stop = false;
  // Every vertex of layers[k] has a predecessor in layers[k + 1], so the
  // search never dead-ends.
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (stop) return;
    if (k == m) {
      stop = !visit(validate_evolution(q, path));
      return;
    }
    for (VertexId next : q.predecessors(path.back())) {
      if (!layers[k + 1][next]) continue;
      path.push_back(next);
      extend(k + 1);
      path.pop_back();
      if (stop) return;
    }
  };
  for (VertexId start = 0; start < q.vertex_count() && !stop; ++start) {
    if (!layers[0][start]) continue;
    path.assign(1, start);
    extend(0);
  }
}

std::vector<Evolution> short_full_evolutions(const Quiver& q, VertexId x, std::size_t limit) {
  std::vector<Evolution> out;
  for_each_short_full_evolution(q, x, [&](const Evolution& e) {
    if (out.size() == limit)
      throw SizeGuardError("more than " + std::to_string(limit) + " short full evolutions");
    out.push_back(e);
    return true;
  });
  return out;
}

Evolution least_short_full_evolution(const Quiver& q, VertexId x) {
  std::optional<Evolution> first;
  for_each_short_full_evolution(q, x, [&](const Evolution& e) {
    first = e;
    return false;
  });
  return *first;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPhylogenetic:
      return "phylogenetic";
    case Verdict::kNotPhylogenetic:
      return "not-phylogenetic";
    case Verdict::kUndecided:
      return "undecided";
  }
  return "undecided";
}

Verdict phylogenetic_verdict(const Quiver& q, VertexId x) {
  q.check_vertex(x);
  const HeightTable h = heights(q);
  if (is_normal(q, h, x)) return Verdict::kPhylogenetic;
  return is_monotonous(q, h) ? Verdict::kNotPhylogenetic : Verdict::kUndecided;
}

bool is_phylogenetic_vertex(const Quiver& q, VertexId x) {
  Verdict v = phylogenetic_verdict(q, x);
  if (v == Verdict::kUndecided)
    throw UndecidedError("undecided: exact universality check unsupported for non-monotonous "
                         "quivers (vertex " + q.label(x) + " is not normal)");
  return v == Verdict::kPhylogenetic;
}

std::optional<Evolution> universal_evolution(const Quiver& q, VertexId x) {
  if (!is_phylogenetic_vertex(q, x)) return std::nullopt;
  return least_short_full_evolution(q, x);
}

bool verify_universal_bounded(const Quiver& q, const Evolution& alpha, std::size_t max_length,
                              std::size_t node_budget) {
  if (!is_primitive(q, alpha.initial()))
    throw PreconditionError("evolution does not start at a primitive vertex");
  for (std::size_t k = 1; k < alpha.vertices().size(); ++k)
    if (!q.has_edge(alpha[k], alpha[k - 1]))
      throw PreconditionError("evolution is not valid in this quiver");

  const std::size_t n = q.vertex_count();
  const std::size_t full = alpha.vertices().size();
  const Condensation& c = q.condensation();
  // matched = how many of A_m, A_{m-1}, ... have been matched so far.
  auto advance = [&](VertexId v, std::size_t matched) {
    if (matched < full && c.class_of(v) == c.class_of(alpha[full - 1 - matched])) ++matched;
    return matched;
  };
  auto key = [&](VertexId v, std::size_t matched) { return matched * n + v; };

  std::vector<bool> seen((full + 1) * n, false);
  std::deque<std::pair<VertexId, std::size_t>> frontier;
  const VertexId x = alpha.terminal();
  std::size_t start = advance(x, 0);
  seen[key(x, start)] = true;
  frontier.emplace_back(x, start);
  std::size_t visited = 1;
  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    std::deque<std::pair<VertexId, std::size_t>> next;
    for (auto [v, matched] : frontier) {
      if (is_primitive(q, v) && matched < full) return false;
      if (depth == max_length) continue;
      for (VertexId w : q.successors(v)) {
        std::size_t m2 = advance(w, matched);
        if (seen[key(w, m2)]) continue;
        seen[key(w, m2)] = true;
        if (++visited > node_budget)
          throw SizeGuardError("bounded universality check exceeded its node budget of " +
                               std::to_string(node_budget));
        next.emplace_back(w, m2);
      }
    }
    frontier = std::move(next);
  }
  return true;
}

Quiver monotonize(const Quiver& q) {
  const HeightTable h = heights(q);
  std::vector<Edge> edges;
  std::vector<std::string> edge_labels;
  for (EdgeId e = 0; e < q.edge_count(); ++e) {
    const Edge& edge = q.edge(e);
    if (h[edge.tail] < h[edge.head]) continue;
    edges.push_back(edge);
    if (q.has_edge_labels()) edge_labels.push_back(q.edge_label(e));
  }
  return Quiver(q.labels(), std::move(edges), std::move(edge_labels));
}

Quiver phylogenetic_core(const Quiver& q) {
  const HeightTable h = heights(q);
  if (!is_monotonous(q, h))
    throw PreconditionError("phylogenetic core requires a monotonous quiver");
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < q.vertex_count(); ++v)
    if (is_normal(q, h, v)) keep.push_back(v);
  return induced_subquiver(q, std::move(keep));
}

bool is_phylogenetic_quiver(const Quiver& q) {
  const HeightTable h = heights(q);
  if (!is_monotonous(q, h)) return false;
  for (VertexId v = 0; v < q.vertex_count(); ++v)
    if (!is_normal(q, h, v)) return false;
  return true;
}

AnalysisReport analyze(const Quiver& q) {
  const HeightTable h = heights(q);
  const Condensation& c = q.condensation();
  AnalysisReport report;
  report.monotonous = is_monotonous(q, h);
  report.isotypy_class_count = c.class_count();
  report.phylogenetic_quiver = report.monotonous;
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    VertexReport r;
    r.id = v;
    r.label = q.label(v);
    r.primitive = c.is_sink(c.class_of(v));
    r.height = h[v];
    r.critical_ancestors = critical_ancestors(q, h, v);
    r.normal = is_normal(q, h, v);
    r.phylogenetic = r.normal ? Verdict::kPhylogenetic
                     : report.monotonous ? Verdict::kNotPhylogenetic
                                         : Verdict::kUndecided;
    r.isotypy_class = c.class_of(v);
    report.phylogenetic_quiver = report.phylogenetic_quiver && r.normal;
    report.vertices.push_back(std::move(r));
  }
  return report;
}

}  // namespace phylo
