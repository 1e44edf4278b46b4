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

#include "phylo/esequence.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "phylo/analysis.hpp"
#include "phylo/error.hpp"

namespace phylo {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_rooted_surjective(const ESequence& e, std::size_t n) {
  if (n > e.top())
    throw PreconditionError("level " + std::to_string(n) + " does not exist (top level is " +
                            std::to_string(e.top()) + ")");
  if (e.width(0) != 1) throw PreconditionError("reconstruction needs exactly one root");
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<bool> hit(e.width(m - 1), false);
    for (std::size_t i = 0; i < e.width(m); ++i) hit[e.parent(m, i)] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw PreconditionError("parental map into level " + std::to_string(m - 1) +
                              " is not surjective");
  }
}

std::size_t meet_depth(const ESequence& e, std::size_t n, std::size_t a, std::size_t b) {
  std::size_t k = 0;
  while (a != b) {
    a = e.parent(n - k, a);
    b = e.parent(n - k, b);
    ++k;
  }
  return k;
}

}  // namespace

bool Relation::empty() const { return std::find(bits_.begin(), bits_.end(), true) == bits_.end(); }

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (holds(a, b)) out.emplace_back(a, b);
  return out;
}

Relation Relation::transitive_closure() const {
  Relation r = *this;
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i)
      if (r.holds(i, k))
        for (std::size_t j = 0; j < n_; ++j)
          if (r.holds(k, j)) r.add(i, j);
  return r;
}

ESequence::ESequence(std::vector<std::vector<std::string>> levels,
                     std::vector<std::vector<std::size_t>> parent, std::vector<Relation> order)
    : levels_(std::move(levels)), parent_(std::move(parent)), order_(std::move(order)) {
  if (levels_.empty()) throw InputError("an E-sequence needs at least one level");
  if (parent_.size() != levels_.size() || order_.size() != levels_.size())
    throw InputError("levels, parents and orders disagree on the number of levels");
  if (!parent_[0].empty()) throw InputError("level 0 has no parental map");
  std::unordered_map<std::string, int> seen;
  for (std::size_t m = 0; m < levels_.size(); ++m) {
    if (levels_[m].empty()) throw InputError("level " + std::to_string(m) + " is empty");
    for (const auto& l : levels_[m])
      if (!seen.emplace(l, 0).second) throw InputError("duplicate element label '" + l + "'");
    if (order_[m].size() != levels_[m].size())
      throw InputError("order on level " + std::to_string(m) + " has the wrong size");
    if (m == 0) continue;
    if (parent_[m].size() != levels_[m].size())
      throw InputError("parental map on level " + std::to_string(m) + " is not total");
    for (std::size_t p : parent_[m])
      if (p >= levels_[m - 1].size())
        throw InputError("parent index out of range on level " + std::to_string(m));
  }
}

ESequence ESequence::from_labels(std::vector<std::vector<std::string>> levels,
                                 const std::vector<std::pair<std::string, std::string>>& parent,
                                 const std::vector<std::pair<std::string, std::string>>& order,
                                 bool close) {
  std::unordered_map<std::string, Node> where;
  for (std::size_t m = 0; m < levels.size(); ++m)
    for (std::size_t i = 0; i < levels[m].size(); ++i) where.emplace(levels[m][i], Node{m, i});
  auto locate = [&](const std::string& l) {
    auto it = where.find(l);
    if (it == where.end()) throw InputError("unknown element '" + l + "'");
    return it->second;
  };

  std::vector<std::vector<std::size_t>> parents(levels.size());
  for (std::size_t m = 1; m < levels.size(); ++m) parents[m].assign(levels[m].size(), kNone);
  for (const auto& [child, par] : parent) {
    Node c = locate(child), p = locate(par);
    if (c.level == 0 || p.level + 1 != c.level)
      throw InputError("parent of '" + child + "' must lie on the level below it");
    parents[c.level][c.index] = p.index;
  }
  for (std::size_t m = 1; m < levels.size(); ++m)
    for (std::size_t i = 0; i < levels[m].size(); ++i)
      if (parents[m][i] == kNone) throw InputError("'" + levels[m][i] + "' has no parent");

  std::vector<Relation> orders;
  for (const auto& level : levels) orders.emplace_back(level.size());
  for (const auto& [lo, hi] : order) {
    Node a = locate(lo), b = locate(hi);
    if (a.level != b.level)
      throw InputError("order pair (" + lo + ", " + hi + ") crosses levels");
    orders[a.level].add(a.index, b.index);
  }
  if (close)
    for (auto& r : orders) r = r.transitive_closure();
  return ESequence(std::move(levels), std::move(parents), std::move(orders));
}

std::size_t ESequence::element_count() const {
  std::size_t total = 0;
  for (const auto& l : levels_) total += l.size();
  return total;
}

std::optional<Node> ESequence::find(const std::string& label) const {
  for (std::size_t m = 0; m < levels_.size(); ++m)
    for (std::size_t i = 0; i < levels_[m].size(); ++i)
      if (levels_[m][i] == label) return Node{m, i};
  return std::nullopt;
}

Node ESequence::node(const std::string& label) const {
  auto n = find(label);
  if (!n) throw InputError("unknown element '" + label + "'");
  return *n;
}

std::size_t ESequence::ancestor(std::size_t m, std::size_t i, std::size_t k) const {
  if (k > m) throw InputError("cannot climb above level 0");
  for (std::size_t step = 0; step < k; ++step) i = parent(m - step, i);
  return i;
}

ESequence ESequence::truncate(std::size_t n) const {
  if (n > top()) throw InputError("cannot truncate above the top level");
  return ESequence({levels_.begin(), levels_.begin() + n + 1},
                   {parent_.begin(), parent_.begin() + n + 1},
                   {order_.begin(), order_.begin() + n + 1});
}

std::vector<std::string> validate_esequence(const ESequence& e) {
  std::vector<std::string> out;
  if (!e.order(0).empty()) out.push_back("the order on level 0 is not trivial");
  for (std::size_t m = 0; m < e.level_count(); ++m) {
    const Relation& r = e.order(m);
    const auto& names = e.level(m);
    const std::size_t w = e.width(m);
    for (std::size_t a = 0; a < w; ++a) {
      if (r.holds(a, a)) out.push_back("level " + std::to_string(m) + ": " + names[a] + " < " +
                                       names[a] + " (not irreflexive)");
      for (std::size_t b = 0; b < w; ++b) {
        if (a == b || !r.holds(a, b)) continue;
        if (a < b && r.holds(b, a))
          out.push_back("level " + std::to_string(m) + ": " + names[a] + " and " + names[b] +
                        " precede each other (not antisymmetric)");
        if (m > 0 && e.parent(m, a) != e.parent(m, b))
          out.push_back("level " + std::to_string(m) + ": " + names[a] + " < " + names[b] +
                        " but their parents differ");
        for (std::size_t c = 0; c < w; ++c)
          if (c != b && r.holds(b, c) && !r.holds(a, c))
            out.push_back("level " + std::to_string(m) + ": " + names[a] + " < " + names[b] +
                          " < " + names[c] + " but not " + names[a] + " < " + names[c] +
                          " (not transitive)");
      }
    }
  }
  return out;
}

ESequence evolutionary_sequence(const Quiver& q) {
  if (!is_phylogenetic_quiver(q))
    throw PreconditionError("the evolutionary sequence is defined for phylogenetic quivers only");
  const HeightTable h = heights(q);
  const Condensation& c = q.condensation();
  const std::size_t top = *std::max_element(h.begin(), h.end());

  // Classes are numbered by least member, so scanning them in order keeps
  // each level sorted by least member id.
  std::vector<std::vector<std::size_t>> classes(top + 1);
  std::vector<std::size_t> position(c.class_count());
  for (std::size_t k = 0; k < c.class_count(); ++k) {
    std::size_t m = h[c.members(k).front()];
    position[k] = classes[m].size();
    classes[m].push_back(k);
  }

  std::vector<std::vector<std::string>> levels(top + 1);
  std::vector<std::vector<std::size_t>> parents(top + 1);
  std::vector<Relation> orders;
  for (std::size_t m = 0; m <= top; ++m) {
    Relation r(classes[m].size());
    for (std::size_t j = 0; j < classes[m].size(); ++j) {
      const VertexId rep = c.members(classes[m][j]).front();
      levels[m].push_back(q.label(rep));
      if (m > 0) {
        Evolution universal = least_short_full_evolution(q, rep);
        parents[m].push_back(position[c.class_of(universal[m - 1])]);
      }
      // [A] < [B] iff A is a proper ancestor class of B at the same height.
      for (VertexId anc : ancestors(q, rep)) {
        std::size_t k = c.class_of(anc);
        if (k != classes[m][j] && h[anc] == m) r.add(position[k], j);
      }
    }
    orders.push_back(std::move(r));
  }
  return ESequence(std::move(levels), std::move(parents), std::move(orders));
}

std::vector<Node> vertex_placement(const Quiver& q, const ESequence& e) {
  const Condensation& c = q.condensation();
  std::vector<Node> out;
  out.reserve(q.vertex_count());
  for (VertexId v = 0; v < q.vertex_count(); ++v)
    out.push_back(e.node(q.label(c.members(c.class_of(v)).front())));
  return out;
}

Quiver realize_esequence(const ESequence& e) {
  auto problems = validate_esequence(e);
  if (!problems.empty()) throw ValidationError("not an E-sequence: " + problems.front());
  std::vector<std::string> labels;
  std::vector<std::size_t> offset;
  for (std::size_t m = 0; m < e.level_count(); ++m) {
    offset.push_back(labels.size());
    labels.insert(labels.end(), e.level(m).begin(), e.level(m).end());
  }
  std::vector<Edge> edges;
  for (std::size_t m = 0; m < e.level_count(); ++m) {
    for (std::size_t a = 0; a < e.width(m); ++a) {
      const VertexId va = offset[m] + a;
      if (m > 0) edges.push_back({va, offset[m - 1] + e.parent(m, a)});
      for (std::size_t b = 0; b < e.width(m); ++b)
        if (e.less(m, b, a)) edges.push_back({va, offset[m] + b});
    }
  }
  return Quiver(std::move(labels), std::move(edges));
}

Forest build_forest(const ESequence& e) { return Forest(e); }

std::optional<std::size_t> forest_distance(const Forest& f, Node a, Node b) {
  const ESequence& e = f.sequence();
  if (a.level >= e.level_count() || a.index >= e.width(a.level) || b.level >= e.level_count() ||
      b.index >= e.width(b.level))
    throw InputError("node outside the forest");
  std::size_t steps = 0;
  while (a.level > b.level) {
    a = {a.level - 1, e.parent(a.level, a.index)};
    ++steps;
  }
  while (b.level > a.level) {
    b = {b.level - 1, e.parent(b.level, b.index)};
    ++steps;
  }
  while (a.index != b.index) {
    if (a.level == 0) return std::nullopt;
    a = {a.level - 1, e.parent(a.level, a.index)};
    b = {b.level - 1, e.parent(b.level, b.index)};
    steps += 2;
  }
  return steps;
}

std::optional<std::size_t> forest_distance(const Forest& f, const std::string& a,
                                           const std::string& b) {
  return forest_distance(f, f.sequence().node(a), f.sequence().node(b));
}

MetricSpace terminal_ultrametric(const ESequence& e, std::size_t n) {
  require_rooted_surjective(e, n);
  const auto w = static_cast<Eigen::Index>(e.width(n));
  MetricSpace::Matrix rho(w, w);
  for (Eigen::Index a = 0; a < w; ++a)
    for (Eigen::Index b = 0; b < w; ++b)
      rho(a, b) = Rational(static_cast<long>(meet_depth(e, n, a, b)));
  return MetricSpace(e.level(n), std::move(rho));
}

Relation induce_prec(const ESequence& e, std::size_t n) {
  require_rooted_surjective(e, n);
  const std::size_t w = e.width(n);
  Relation prec(w);
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = 0; b < w; ++b) {
      if (a == b) continue;
      const std::size_t k = meet_depth(e, n, a, b);
      if (e.less(n - k + 1, e.ancestor(n, a, k - 1), e.ancestor(n, b, k - 1))) prec.add(a, b);
    }
  return prec;
}

std::vector<std::string> validate_prec(const MetricSpace& rho, const Relation& prec,
                                       std::size_t n) {
  if (!validate_space(rho).is_ultrametric) throw InputError("rho is not an ultrametric");
  if (prec.size() != rho.size())
    throw InputError("relation and ultrametric have different point counts");
  const std::size_t w = rho.size();
  const auto& name = rho.labels();
  std::vector<std::string> out;
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = a + 1; b < w; ++b) {
      const Rational& v = rho(a, b);
      if (v.get_den() != 1 || v > Rational(static_cast<long>(n)))
        out.push_back("rho(" + name[a] + ", " + name[b] + ") = " + v.get_str() +
                      " is not in {0, ..., " + std::to_string(n) + "}");
    }
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = a; b < w; ++b)
      if (prec.holds(a, b) && prec.holds(b, a))
        out.push_back(a == b ? name[a] + " precedes itself"
                             : name[a] + " and " + name[b] + " precede each other");
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = 0; b < w; ++b) {
      if (a == b || !prec.holds(a, b)) continue;
      for (std::size_t c = 0; c < w; ++c) {
        if (c == a || c == b) continue;
        if (rho(a, c) < rho(a, b) && !prec.holds(c, b))
          out.push_back(name[a] + " precedes " + name[b] + " and rho(" + name[a] + ", " +
                        name[c] + ") < rho(" + name[a] + ", " + name[b] + "), but " + name[c] +
                        " does not precede " + name[b]);
        if (rho(b, c) < rho(a, b) && !prec.holds(a, c))
          out.push_back(name[a] + " precedes " + name[b] + " and rho(" + name[b] + ", " +
                        name[c] + ") < rho(" + name[a] + ", " + name[b] + "), but " + name[a] +
                        " does not precede " + name[c]);
        if (prec.holds(b, c) && rho(a, b) == rho(a, c) && rho(a, b) == rho(b, c) &&
            !prec.holds(a, c))
          out.push_back(name[a] + " precedes " + name[b] + " precedes " + name[c] +
                        " at equal distances, but " + name[a] + " does not precede " + name[c]);
      }
    }
  return out;
}

ESequence reconstruct(const MetricSpace& rho, const Relation& prec, std::size_t n) {
  auto problems = validate_prec(rho, prec, n);
  if (!problems.empty()) throw ValidationError("cannot reconstruct: " + problems.front());

  std::vector<std::vector<std::vector<std::size_t>>> blocks(n + 1);
  std::vector<std::vector<std::size_t>> block_of(n + 1, std::vector<std::size_t>(rho.size()));
  std::vector<std::vector<std::string>> levels(n + 1);
  for (std::size_t s = 0; s <= n; ++s) {
    blocks[s] = balls(rho, Rational(static_cast<long>(n - s)));
    for (std::size_t k = 0; k < blocks[s].size(); ++k) {
      std::string label;
      for (std::size_t p : blocks[s][k]) {
        block_of[s][p] = k;
        if (s < n) label += (label.empty() ? "s" + std::to_string(s) + ":" : "+") + rho.label(p);
      }
      levels[s].push_back(s == n ? rho.label(blocks[s][k].front()) : label);
    }
  }

  std::vector<std::vector<std::size_t>> parents(n + 1);
  std::vector<Relation> orders;
  for (std::size_t s = 0; s <= n; ++s) {
    const std::size_t radius = n - s;
    for (const auto& block : blocks[s])
      if (s > 0) parents[s].push_back(block_of[s - 1][block.front()]);
    Relation r(blocks[s].size());
    for (std::size_t i = 0; i < blocks[s].size(); ++i)
      for (std::size_t j = 0; j < blocks[s].size(); ++j) {
        std::size_t a = blocks[s][i].front(), b = blocks[s][j].front();
        if (i != j && prec.holds(a, b) && rho(a, b) == Rational(static_cast<long>(radius + 1)))
          r.add(i, j);
      }
    orders.push_back(r.transitive_closure());
  }
  return ESequence(std::move(levels), std::move(parents), std::move(orders));
}

bool esequence_isomorphic(const ESequence& a, const ESequence& b) {
  if (a.level_count() != b.level_count()) return false;
  for (std::size_t m = 0; m < a.level_count(); ++m)
    if (a.width(m) != b.width(m)) return false;

  // Both sequences share one node numbering: a's nodes first, then b's.
  struct Side {
    const ESequence* e;
    std::vector<Relation> order;
    std::size_t base;
  };
  std::vector<std::size_t> offset_a, offset_b;
  std::size_t total = 0;
  for (std::size_t m = 0; m < a.level_count(); ++m) {
    offset_a.push_back(total);
    total += a.width(m);
  }
  for (std::size_t m = 0; m < b.level_count(); ++m) {
    offset_b.push_back(total);
    total += b.width(m);
  }
  Side sides[2] = {{&a, {}, 0}, {&b, {}, 0}};
  for (auto& s : sides)
    for (const auto& r : s.e->orders()) s.order.push_back(r.transitive_closure());
  const std::vector<std::size_t>* offsets[2] = {&offset_a, &offset_b};

  // Colour refinement over parent, child and order neighbourhoods. Nodes of
  // different final colours cannot correspond under any isomorphism.
  std::vector<std::size_t> colour(total);
  std::vector<std::size_t> parent_of(total, kNone);
  std::vector<std::vector<std::size_t>> children(total), above(total), below(total);
  for (int side = 0; side < 2; ++side) {
    const ESequence& e = *sides[side].e;
    for (std::size_t m = 0; m < e.level_count(); ++m)
      for (std::size_t i = 0; i < e.width(m); ++i) {
        std::size_t id = (*offsets[side])[m] + i;
        colour[id] = m;
        if (m > 0) {
          parent_of[id] = (*offsets[side])[m - 1] + e.parent(m, i);
          children[parent_of[id]].push_back(id);
        }
        for (std::size_t j = 0; j < e.width(m); ++j)
          if (sides[side].order[m].holds(i, j)) {
            above[id].push_back((*offsets[side])[m] + j);
            below[(*offsets[side])[m] + j].push_back(id);
          }
      }
  }
  std::size_t distinct = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> palette;
    std::vector<std::size_t> next(total);
    for (std::size_t id = 0; id < total; ++id) {
      std::vector<std::size_t> sig{colour[id], parent_of[id] == kNone ? kNone : colour[parent_of[id]]};
      for (const auto* group : {&children[id], &above[id], &below[id]}) {
        std::vector<std::size_t> cs;
        for (std::size_t x : *group) cs.push_back(colour[x]);
        std::sort(cs.begin(), cs.end());
        sig.push_back(kNone);
        sig.insert(sig.end(), cs.begin(), cs.end());
      }
      next[id] = palette.emplace(std::move(sig), palette.size()).first->second;
    }
    colour = std::move(next);
    if (palette.size() == distinct) break;
    distinct = palette.size();
  }
  {
    std::map<std::size_t, long> balance;
    for (std::size_t id = 0; id < offset_b[0]; ++id) ++balance[colour[id]];
    for (std::size_t id = offset_b[0]; id < total; ++id) --balance[colour[id]];
    for (const auto& [c, count] : balance)
      if (count != 0) return false;
  }

  // Backtracking, level by level, over colour-compatible candidates.
  std::vector<Node> order_a;
  for (std::size_t m = 0; m < a.level_count(); ++m)
    for (std::size_t i = 0; i < a.width(m); ++i) order_a.push_back({m, i});
  std::vector<std::vector<std::size_t>> image(a.level_count());
  std::vector<std::vector<bool>> used(b.level_count());
  for (std::size_t m = 0; m < a.level_count(); ++m) {
    image[m].assign(a.width(m), kNone);
    used[m].assign(b.width(m), false);
  }
  auto search = [&](auto&& self, std::size_t step) -> bool {
    if (step == order_a.size()) return true;
    const auto [m, i] = order_a[step];
    const std::size_t ci = colour[offset_a[m] + i];
    for (std::size_t j = 0; j < b.width(m); ++j) {
      if (used[m][j] || colour[offset_b[m] + j] != ci) continue;
      if (m > 0 && image[m - 1][a.parent(m, i)] != b.parent(m, j)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        std::size_t fk = image[m][k];
        ok = sides[0].order[m].holds(i, k) == sides[1].order[m].holds(j, fk) &&
             sides[0].order[m].holds(k, i) == sides[1].order[m].holds(fk, j);
      }
      if (!ok) continue;
      image[m][i] = j;
      used[m][j] = true;
      if (self(self, step + 1)) return true;
      used[m][j] = false;
      image[m][i] = kNone;
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace phylo
