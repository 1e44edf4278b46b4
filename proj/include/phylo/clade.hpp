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
#include <vector>

#include "phylo/analysis.hpp"
#include "phylo/quiver.hpp"

namespace phylo {

/// The clade of A: every descendant of A and all edges between them.
struct Clade {
  VertexId apex;                   // host id
  Quiver quiver;                   // vertex i corresponds to host_vertex[i]
  std::vector<VertexId> host_vertex;

  /// Local id of a host vertex; throws InputError if it is not in the clade.
  VertexId local(VertexId host) const;
  bool contains(VertexId host) const;
  /// h_A: heights computed inside the clade, indexed by local id.
  HeightTable heights() const { return phylo::heights(quiver); }
};

Clade clade(const Quiver& q, VertexId a);

/// For every descendant B != A with h(B) = h(A) there is an edge B -> A.
/// B = A needs no loop.
bool is_regular(const Quiver& q, VertexId a);

/// h_A(B) from host heights: h(B) - h(A) when p^{h(B)-h(A)}[B] = [A], otherwise
/// h(B) - h(A) + 1, which needs A regular.
///
/// Throws PreconditionError if q is not phylogenetic or the second case is
/// reached with A irregular, InputError if B is not a descendant of A.
std::size_t clade_height(const Quiver& q, VertexId a, VertexId b);

/// h_A(B) measured directly inside clade(q, a).
std::size_t clade_height_direct(const Quiver& q, VertexId a, VertexId b);

}  // namespace phylo
