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

#include "phylo/clade.hpp"

#include <algorithm>

#include "phylo/error.hpp"

namespace phylo {

VertexId Clade::local(VertexId host) const {
  auto it = std::lower_bound(host_vertex.begin(), host_vertex.end(), host);
  if (it == host_vertex.end() || *it != host)
    throw InputError("vertex " + std::to_string(host) + " is not in the clade");
  return static_cast<VertexId>(it - host_vertex.begin());
}

bool Clade::contains(VertexId host) const {
  return std::binary_search(host_vertex.begin(), host_vertex.end(), host);
}

Clade clade(const Quiver& q, VertexId a) {
  q.check_vertex(a);
  std::vector<VertexId> host;
  Quiver sub = induced_subquiver(q, descendants(q, a), &host);
  return Clade{a, std::move(sub), std::move(host)};
}

bool is_regular(const Quiver& q, VertexId a) {
  q.check_vertex(a);
  const HeightTable h = heights(q);
  for (VertexId b : descendants(q, a)) {
    if (b == a || h[b] != h[a]) continue;
    if (!q.has_edge(b, a)) return false;
  }
  return true;
}

std::size_t clade_height(const Quiver& q, VertexId a, VertexId b) {
  q.check_vertex(a);
  q.check_vertex(b);
  if (!is_phylogenetic_quiver(q))
    throw PreconditionError("clade height formulas need a phylogenetic quiver");
  if (!ancestor_of(q, a, b))
    throw InputError(q.label(b) + " is not a descendant of " + q.label(a));
  const HeightTable h = heights(q);
  const std::size_t m = h[a];
  const std::size_t n = h[b];
  // Vertex m of a universal evolution for B represents p^{n-m}([B]).
  const Evolution beta = least_short_full_evolution(q, b);
  if (isotypic(q, beta[m], a)) return n - m;
  if (!is_regular(q, a))
    throw PreconditionError(q.label(a) +
                            " is not regular; compute the clade height directly instead");
  return n - m + 1;
}

std::size_t clade_height_direct(const Quiver& q, VertexId a, VertexId b) {
  Clade c = clade(q, a);
  return c.heights()[c.local(b)];
}

}  // namespace phylo
