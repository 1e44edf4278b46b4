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

#include <string>
#include <string_view>

#include <json.hpp>

#include "phylo/analysis.hpp"
#include "phylo/esequence.hpp"
#include "phylo/metric_space.hpp"
#include "phylo/quiver.hpp"

namespace phylo {

using Json = nlohmann::ordered_json;

/// Whole file as a string; InputError if it cannot be read.
std::string read_file(const std::string& path);

/// {"vertices": [...], "edges": [[tail, head], ...]}; an edge may carry a third
/// element, its label. Syntax errors raise ParseError with line and column.
Quiver parse_quiver_json(std::string_view text);
/// `digraph name { a -> b; ... }` with tail -> head; `label` attributes on
/// edges become edge labels. Vertices are numbered by first appearance.
Quiver parse_quiver_dot(std::string_view text);
/// JSON when the text starts with '{', DOT otherwise.
Quiver parse_quiver(std::string_view text);

Json quiver_to_json(const Quiver& q);
std::string quiver_to_dot(const Quiver& q);

Json evolution_to_json(const Quiver& q, const Evolution& evo);
Json report_to_json(const Quiver& q, const AnalysisReport& report);
/// Apex, sorted members, in-clade heights, host heights and the regular flag.
Json clade_to_json(const Quiver& q, VertexId apex);

/// {"levels": [[...]], "parent": {child: parent}, "order": [[a, b]]}. Levels
/// and order pairs are sorted by label.
Json esequence_to_json(const ESequence& e);
ESequence parse_esequence_json(std::string_view text, bool close_orders = true);

/// Parent edges child -> parent.
std::string forest_to_dot(const Forest& f);
/// Single-rooted forests only (PreconditionError otherwise); every parent edge
/// has branch length 1 and children are sorted by label.
std::string forest_to_newick(const Forest& f);

/// Header row of labels, then one row per point. Rows may start with their
/// label, in which case the header may start with an empty cell. Entries are
/// integers, p/q fractions or decimals. Lines starting with '#' are ignored.
MetricSpace parse_distance_csv(std::string_view text);
std::string distance_csv(const MetricSpace& m);

/// One pair per line, "a,b", "a b" or "a < b", meaning a precedes b.
Relation parse_prec_pairs(std::string_view text, const MetricSpace& points);

Json space_to_json(const MetricSpace& m);
/// Spaces, and for each map its point table and classification.
Json tower_to_json(const Tower<Rational>& t);

}  // namespace phylo
